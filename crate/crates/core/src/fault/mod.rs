//! Topological-protection experiments on logical history states.
//!
//! A [`LogicalPair`] holds the histories of one circuit run on the two
//! logical codewords. The revised overlap compares the clean `|0_L>`
//! history with the `|1_L>` history carrying a single fault, step by step,
//! after discarding every ancilla that has already been reset. A circuit
//! that never turns one fault into a logical error keeps the two branches
//! orthogonal; one that does is caught at least at the final step.

mod counting;
mod ising;
mod overlap;
mod penalty;

pub use counting::{
    counting_model, survival_time, AnalysisParams, CountingMode, CountingParams, CountingTrace,
};
pub use ising::{add_ising_penalty, ising_energy};
pub use overlap::{
    direct_overlap, overlap_scan, revised_overlap, revised_overlap_trace, OverlapEntry,
    OverlapReport, OverlapSummary,
};
pub use penalty::{
    apply_penalties, bitflip_penalties, InputRise, PenaltyFlag, PenaltyMode, PenaltyReport,
    PenaltySpec,
};

use crate::circuit::{codeword_input, simulate_dense, Circuit, CircuitError, WireKind};
use crate::clock::{history_state, ClockError, HistoryState};
use crate::lattice::LatticeError;
use crate::linalg::{LinalgError, StateVector};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaultError {
    #[error("invalid logical pair: {0}")]
    InvalidPair(String),
    #[error("register dimension {dim} exceeds the cap of {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("penalty flag on wire {wire} at steps {from}..={to} does not fit the circuit")]
    FlagUnresolved { wire: usize, from: usize, to: usize },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must lie below 1, got {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("operator of dimension {op} does not match {basis} lattice configurations")]
    Geometry { op: usize, basis: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Clock(#[from] ClockError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, FaultError>;

/// One circuit with its histories on two logical inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalPair {
    circuit: Circuit,
    inputs: [StateVector; 2],
    snapshots: [Vec<StateVector>; 2],
    histories: [HistoryState; 2],
}

const ORTHOGONALITY_TOL: f64 = 1e-12;

impl LogicalPair {
    /// Requires orthogonal inputs (and therefore orthogonal histories).
    pub fn new(circuit: Circuit, input0: StateVector, input1: StateVector) -> Result<Self> {
        let overlap = input0.inner(&input1)?.norm();
        if overlap > ORTHOGONALITY_TOL {
            return Err(FaultError::InvalidPair(format!(
                "inputs overlap by {overlap:.3e}"
            )));
        }
        let pair = Self::new_unchecked(circuit, input0, input1)?;
        let h = pair.histories[0].state.inner(&pair.histories[1].state)?.norm();
        if h > ORTHOGONALITY_TOL {
            return Err(FaultError::InvalidPair(format!("histories overlap by {h:.3e}")));
        }
        Ok(pair)
    }

    /// Skips the orthogonality check; useful for diagnostics with equal inputs.
    pub fn new_unchecked(circuit: Circuit, input0: StateVector, input1: StateVector) -> Result<Self> {
        let s0 = simulate_dense(&circuit, &input0)?;
        let s1 = simulate_dense(&circuit, &input1)?;
        let h0 = history_state(&circuit, &input0)?;
        let h1 = history_state(&circuit, &input1)?;
        Ok(Self {
            circuit,
            inputs: [input0, input1],
            snapshots: [s0, s1],
            histories: [h0, h1],
        })
    }

    /// Codeword inputs `|0...0>` and `|1...1>` on the data wires.
    pub fn codewords(circuit: Circuit) -> Result<Self> {
        let a = codeword_input(&circuit, 0);
        let b = codeword_input(&circuit, 1);
        Self::new(circuit, a, b)
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn input(&self, k: usize) -> &StateVector {
        &self.inputs[k]
    }

    pub fn snapshots(&self, k: usize) -> &[StateVector] {
        &self.snapshots[k]
    }

    pub fn history(&self, k: usize) -> &HistoryState {
        &self.histories[k]
    }

    /// Number of clock steps `D`.
    pub fn steps(&self) -> usize {
        self.circuit.steps()
    }

    /// Same pair with the branches exchanged.
    pub fn swapped(&self) -> Self {
        let [a, b] = self.inputs.clone();
        let [s0, s1] = self.snapshots.clone();
        let [h0, h1] = self.histories.clone();
        Self {
            circuit: self.circuit.clone(),
            inputs: [b, a],
            snapshots: [s1, s0],
            histories: [h1, h0],
        }
    }

    pub fn is_qutrit(&self) -> bool {
        self.circuit.wires().iter().all(|w| w.kind == WireKind::Qutrit)
    }

    /// Same pair on a register where every wire is a qutrit, so that
    /// leakage faults can be placed anywhere.
    pub fn promoted(&self) -> Result<Self> {
        if self.is_qutrit() {
            return Ok(self.clone());
        }
        let q = self.circuit.to_qutrits();
        let a = self.circuit.embed_state(&q, &self.inputs[0])?;
        let b = self.circuit.embed_state(&q, &self.inputs[1])?;
        Self::new_unchecked(q, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{bitflip_ec_circuit, EcVariant};

    #[test]
    fn codeword_pair_is_orthogonal_and_rejects_equal_inputs() {
        let c = bitflip_ec_circuit(EcVariant::Flawed);
        let p = LogicalPair::codewords(c.clone()).unwrap();
        assert_eq!(p.steps(), 8);
        let v = codeword_input(&c, 0);
        assert!(matches!(
            LogicalPair::new(c, v.clone(), v),
            Err(FaultError::InvalidPair(_))
        ));
    }

    #[test]
    fn promotion_keeps_the_step_count() {
        let p = LogicalPair::codewords(bitflip_ec_circuit(EcVariant::Safe)).unwrap();
        let q = p.promoted().unwrap();
        assert!(q.is_qutrit());
        assert_eq!(q.steps(), p.steps());
        assert_eq!(q.input(1).dim(), 3usize.pow(5));
    }
}
