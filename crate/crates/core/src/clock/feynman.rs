use super::{ClockError, Result, MAX_UNARY_STEPS};
use crate::circuit::{gate_operator, simulate_dense, Circuit};
use crate::linalg::{evolve, OperatorBuilder, SparseOperator, StateVector, C64};
use crate::transfer::{locate_transfer_time, CouplingScheme, TransferPeak};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClockEncoding {
    /// Clock position is a basis label `0..D`; index = clock * W + work.
    IntegerRegister,
    /// `D` clock qubits (qubit 0 most significant), position `n` is the
    /// one-hot pattern with qubit `n` set.
    PhysicalUnary,
}

#[derive(Debug, Clone)]
pub struct ClockHamiltonian {
    circuit: Circuit,
    scheme: CouplingScheme,
    encoding: ClockEncoding,
    operator: SparseOperator,
    t0: OnceLock<TransferPeak>,
}

impl ClockHamiltonian {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn scheme(&self) -> &CouplingScheme {
        &self.scheme
    }

    pub fn encoding(&self) -> ClockEncoding {
        self.encoding
    }

    pub fn operator(&self) -> &SparseOperator {
        &self.operator
    }

    pub fn steps(&self) -> usize {
        self.circuit.steps()
    }

    pub fn work_dim(&self) -> usize {
        self.circuit.work_dim()
    }

    pub fn clock_dim(&self) -> usize {
        match self.encoding {
            ClockEncoding::IntegerRegister => self.steps(),
            ClockEncoding::PhysicalUnary => 1 << self.steps(),
        }
    }

    /// Clock-register basis label of position `n`.
    pub fn clock_label(&self, n: usize) -> usize {
        match self.encoding {
            ClockEncoding::IntegerRegister => n,
            ClockEncoding::PhysicalUnary => 1 << (self.steps() - 1 - n),
        }
    }

    /// `|clock n> ⊗ work`.
    pub fn embed(&self, n: usize, work: &StateVector) -> StateVector {
        let w = self.work_dim();
        let mut out = StateVector::zeros(self.clock_dim() * w);
        let base = self.clock_label(n) * w;
        out.amplitudes_mut()[base..base + w].copy_from_slice(work.amplitudes());
        out
    }

    /// Unnormalised work-register block at clock position `n`.
    pub fn block(&self, state: &StateVector, n: usize) -> StateVector {
        let w = self.work_dim();
        let base = self.clock_label(n) * w;
        StateVector::new(state.amplitudes()[base..base + w].to_vec()).expect("non-empty block")
    }

    /// Probability of each clock position.
    pub fn clock_probabilities(&self, state: &StateVector) -> Vec<f64> {
        (0..self.steps())
            .map(|n| self.block(state, n).norm_sqr())
            .collect()
    }

    /// Calibrated transfer time of the scheme, computed once.
    pub fn t0(&self) -> TransferPeak {
        *self.t0.get_or_init(|| locate_transfer_time(&self.scheme))
    }
}

/// Integer-register Feynman Hamiltonian.
pub fn build_feynman(c: &Circuit, s: &CouplingScheme) -> Result<ClockHamiltonian> {
    build_feynman_with(c, s, ClockEncoding::IntegerRegister)
}

/// `H = Σ_n J_n (|n+1><n| ⊗ U_{n+1} + h.c.)` in the chosen clock encoding.
/// In unary mode the clock factor is `σ⁻_n σ⁺_{n+1}` over the whole
/// `2^D`-dimensional clock register, with `σ⁻ = |0><1|`.
pub fn build_feynman_with(
    c: &Circuit,
    s: &CouplingScheme,
    encoding: ClockEncoding,
) -> Result<ClockHamiltonian> {
    let d = c.steps();
    if s.len() != d - 1 {
        return Err(ClockError::SchemeLength {
            expected: d - 1,
            found: s.len(),
        });
    }
    if encoding == ClockEncoding::PhysicalUnary && d > MAX_UNARY_STEPS {
        return Err(ClockError::TooManySteps {
            steps: d,
            max: MAX_UNARY_STEPS,
        });
    }
    let w = c.work_dim();
    let clock_dim = match encoding {
        ClockEncoding::IntegerRegister => d,
        ClockEncoding::PhysicalUnary => 1 << d,
    };
    let mut b = OperatorBuilder::new(clock_dim * w);
    for n in 0..d - 1 {
        let u = gate_operator(c, n)?;
        let j = s[n];
        // Clock transitions (from, to) realised by the n-th term.
        let moves: Vec<(usize, usize)> = match encoding {
            ClockEncoding::IntegerRegister => vec![(n, n + 1)],
            ClockEncoding::PhysicalUnary => {
                let bit_n = 1 << (d - 1 - n);
                let bit_next = 1 << (d - 2 - n);
                (0..clock_dim)
                    .filter(|x| x & bit_n != 0 && x & bit_next == 0)
                    .map(|x| (x, x ^ bit_n ^ bit_next))
                    .collect()
            }
        };
        for (from, to) in moves {
            for (i, k, a) in u.entries() {
                b.push_hopping(to * w + i, from * w + k, a * C64::new(j, 0.0));
            }
        }
    }
    Ok(ClockHamiltonian {
        circuit: c.clone(),
        scheme: s.clone(),
        encoding,
        operator: b.build_hermitian()?,
        t0: OnceLock::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(rename = "D")]
    pub steps: usize,
    pub t0: f64,
    /// Phase-insensitive overlap of the normalised output block with the
    /// circuit oracle's final snapshot.
    pub fidelity: f64,
    pub clock_arrival_probability: f64,
    pub gap: Option<f64>,
    #[serde(skip)]
    pub output: Option<StateVector>,
}

pub const RUN_TOLERANCE: f64 = 1e-8;

/// Evolves `|clock 0> ⊗ input` for the calibrated `t0` and reads the work
/// register at the last clock position.
pub fn run_computation(h: &ClockHamiltonian, input: &StateVector) -> Result<RunReport> {
    let peak = h.t0();
    let start = h.embed(0, input);
    let out = evolve(h.operator(), &start, peak.t0)?;
    let last = h.block(&out, h.steps() - 1);
    let arrival = last.norm_sqr();
    let expected = simulate_dense(h.circuit(), input)?
        .pop()
        .expect("at least one snapshot");
    let fidelity = if arrival > 0.0 {
        (last.inner(&expected)?.norm() / arrival.sqrt()).min(1.0)
    } else {
        0.0
    };
    if arrival < 1.0 - RUN_TOLERANCE || fidelity < 1.0 - RUN_TOLERANCE {
        return Err(ClockError::NotPerfect {
            fidelity,
            arrival,
            t0: peak.t0,
        });
    }
    Ok(RunReport {
        steps: h.steps(),
        t0: peak.t0,
        fidelity,
        clock_arrival_probability: arrival,
        gap: None,
        output: Some(last.scaled(C64::new(1.0 / arrival.sqrt(), 0.0))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::transfer::pst_couplings;

    fn x_circuit() -> Circuit {
        Circuit::builder().qubit("q").gate(Gate::x(0)).build().unwrap()
    }

    #[test]
    fn x_circuit_operator_is_four_dimensional() {
        let h = build_feynman(&x_circuit(), &pst_couplings(1).unwrap()).unwrap();
        assert_eq!(h.operator().dim(), 4);
        // |clock 1, 1> <- |clock 0, 0>
        assert_eq!(h.operator().get(3, 0), C64::new(1.0, 0.0));
    }

    #[test]
    fn scheme_length_must_match() {
        let e = build_feynman(&x_circuit(), &pst_couplings(2).unwrap()).unwrap_err();
        assert_eq!(e, ClockError::SchemeLength { expected: 1, found: 2 });
    }

    #[test]
    fn unary_labels_are_one_hot_msb_first() {
        let h = build_feynman_with(&x_circuit(), &pst_couplings(1).unwrap(), ClockEncoding::PhysicalUnary)
            .unwrap();
        assert_eq!(h.clock_dim(), 4);
        assert_eq!(h.clock_label(0), 2);
        assert_eq!(h.clock_label(1), 1);
    }

    #[test]
    fn non_pst_scheme_reports_shortfall() {
        let c = Circuit::builder()
            .qubit("q")
            .gate(Gate::x(0))
            .gate(Gate::x(0))
            .gate(Gate::x(0))
            .gate(Gate::x(0))
            .build()
            .unwrap();
        let h = build_feynman(&c, &CouplingScheme::uniform(4, 1.0).unwrap()).unwrap();
        match run_computation(&h, &StateVector::basis(2, 0)) {
            Err(ClockError::NotPerfect { arrival, .. }) => assert!(arrival < 0.98),
            other => panic!("{other:?}"),
        }
    }
}
