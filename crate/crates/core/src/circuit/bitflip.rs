//! Three-qubit bit-flip code with two syndrome ancillas, in a flawed and a
//! safe extraction order.

use super::{
    insert_error, simulate_dense, Circuit, CircuitError, Control, ErrorLocation, ErrorOp, Gate,
    GateKind, Reset, Result, Wire, WireRole,
};
use crate::linalg::StateVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EcVariant {
    /// `d1` is copied into the two ancillas by separate CNOTs, so a flip of
    /// `d1` between them produces a misleading syndrome.
    Flawed,
    /// `d1` fans out into both ancillas in one gate.
    Safe,
}

impl std::str::FromStr for EcVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "flawed" => Ok(EcVariant::Flawed),
            "safe" => Ok(EcVariant::Safe),
            _ => Err(format!("unknown variant `{s}` (expected flawed or safe)")),
        }
    }
}

/// One round over wires `d0 d1 d2 a0 a1`; ancillas are reset after the
/// last gate.
pub fn bitflip_ec_circuit(variant: EcVariant) -> Circuit {
    let (d0, d1, d2, a0, a1) = (0, 1, 2, 3, 4);
    let mut b = Circuit::builder()
        .qubit("d0")
        .qubit("d1")
        .qubit("d2")
        .ancilla("a0")
        .ancilla("a1")
        .gate(Gate::cnot(d0, a0));
    b = match variant {
        EcVariant::Flawed => b.gate(Gate::cnot(d1, a0)).gate(Gate::cnot(d1, a1)),
        EcVariant::Safe => {
            b.gate(Gate::new(GateKind::X, vec![a0, a1], vec![Control::on(d1)]))
        }
    };
    b = b
        .gate(Gate::cnot(d2, a1))
        .gate(Gate::x(d1).with_control(Control::on(a0)).with_control(Control::on(a1)))
        .gate(Gate::x(d2).with_control(Control::off(a0)).with_control(Control::on(a1)))
        .gate(Gate::x(d0).with_control(Control::on(a0)).with_control(Control::off(a1)));
    let gates = match variant {
        EcVariant::Flawed => 7,
        EcVariant::Safe => 6,
    };
    b.reset(a0, gates)
        .reset(a1, gates)
        .build()
        .expect("bit-flip circuit is well formed")
}

pub fn bitflip_ec_rounds(variant: EcVariant, rounds: usize) -> Circuit {
    bitflip_ec_circuit(variant)
        .repeat(rounds)
        .expect("bit-flip circuit repeats")
}

impl Circuit {
    /// Concatenates `rounds` copies. Data wires are shared; every round after
    /// the first gets fresh ancillas (suffixed `_r2`, `_r3`, ...) with the
    /// reset schedule shifted by the round offset. Round-one wire indices are
    /// unchanged and existing faults are kept.
    pub fn repeat(&self, rounds: usize) -> Result<Circuit> {
        if rounds == 0 {
            return Err(CircuitError::InvalidGate("cannot repeat zero times".into()));
        }
        let ancillas = self.ancilla_wires();
        let per_round = self.gates().len();
        let mut wires = self.wires().to_vec();
        let mut maps = vec![(0..wires.len()).collect::<Vec<_>>()];
        for r in 2..=rounds {
            let mut map: Vec<usize> = (0..self.wires().len()).collect();
            for &a in &ancillas {
                map[a] = wires.len();
                let w = &self.wires()[a];
                wires.push(Wire::new(format!("{}_r{r}", w.name), w.kind, w.role));
            }
            maps.push(map);
        }
        let mut gates = Vec::with_capacity(per_round * rounds);
        let mut resets = Vec::new();
        for (r, map) in maps.iter().enumerate() {
            for g in self.gates() {
                let mut g = g.clone();
                g.targets.iter_mut().for_each(|t| *t = map[*t]);
                g.controls.iter_mut().for_each(|c| c.wire = map[c.wire]);
                gates.push(g);
            }
            for reset in self.resets() {
                resets.push(Reset {
                    wire: map[reset.wire],
                    step: reset.step + r * per_round,
                });
            }
        }
        let mut out = Circuit::new(wires, gates, resets)?;
        out.faults = self.faults().to_vec();
        out.validate_steps()?;
        Ok(out)
    }
}

/// Data wires all in `bit`, ancillas in 0.
pub fn codeword_input(c: &Circuit, bit: u8) -> StateVector {
    let bits: Vec<u8> = vec![bit; c.data_wires().len()];
    data_input(c, &bits)
}

fn data_input(c: &Circuit, bits: &[u8]) -> StateVector {
    let dims = c.dims();
    let mut digits = vec![0; dims.len()];
    for (&w, &b) in c.data_wires().iter().zip(bits) {
        digits[w] = b as usize;
    }
    StateVector::basis(c.work_dim(), super::index_of(&digits, &dims))
}

/// Probabilities `[P(logical 0), P(logical 1)]` under majority vote of the
/// data wires. Leaked digits vote for neither value.
pub fn decode_majority(c: &Circuit, state: &StateVector) -> [f64; 2] {
    let dims = c.dims();
    let data = c.data_wires();
    let mut p = [0.0; 2];
    for (i, a) in state.amplitudes().iter().enumerate() {
        let digits = super::digits_of(i, &dims);
        let ones = data.iter().filter(|&&w| digits[w] == 1).count();
        let zeros = data.iter().filter(|&&w| digits[w] == 0).count();
        if ones > zeros {
            p[1] += a.norm_sqr();
        } else if zeros > ones {
            p[0] += a.norm_sqr();
        }
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Benign,
    Malignant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub location: ErrorLocation,
    /// Probability of decoding the wrong logical value, per input codeword.
    pub p_wrong: Vec<f64>,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MalignancyMap {
    pub rounds: usize,
    pub entries: Vec<ScanEntry>,
}

impl MalignancyMap {
    pub fn malignant(&self) -> Vec<ErrorLocation> {
        self.entries
            .iter()
            .filter(|e| e.classification == Classification::Malignant)
            .map(|e| e.location)
            .collect()
    }
}

/// Scans a single X fault at every (step, wire) of the first round of
/// `c.repeat(rounds)`, for both codewords.
pub fn malignancy_scan(c: &Circuit, rounds: usize) -> Result<MalignancyMap> {
    scan(c, rounds, &[0, 1])
}

/// As [`malignancy_scan`] from the data bits given (which must form a
/// codeword).
pub fn malignancy_scan_from(c: &Circuit, rounds: usize, data_bits: &[u8]) -> Result<MalignancyMap> {
    let n = c.data_wires().len();
    if data_bits.len() != n {
        return Err(CircuitError::NotCodeword(format!(
            "expected {n} data bits, got {}",
            data_bits.len()
        )));
    }
    match data_bits.first() {
        Some(&b) if b <= 1 && data_bits.iter().all(|&x| x == b) => scan(c, rounds, &[b]),
        _ => Err(CircuitError::NotCodeword(format!("{data_bits:?}"))),
    }
}

fn scan(c: &Circuit, rounds: usize, logicals: &[u8]) -> Result<MalignancyMap> {
    if rounds < 2 {
        return Err(CircuitError::TooFewRounds(rounds));
    }
    if c.data_wires().is_empty() {
        return Err(CircuitError::NotCodeword("circuit has no data wires".into()));
    }
    let full = c.repeat(rounds)?;
    let mut entries = Vec::new();
    for step in 0..c.steps() {
        for wire in 0..c.wires().len() {
            let location = ErrorLocation::new(step, wire, ErrorOp::X);
            let faulty = insert_error(&full, location)?;
            let mut p_wrong = Vec::with_capacity(logicals.len());
            for &bit in logicals {
                let input = codeword_input(&full, bit);
                let last = simulate_dense(&faulty, &input)?
                    .pop()
                    .expect("at least one snapshot");
                p_wrong.push(decode_majority(&full, &last)[1 - bit as usize]);
            }
            let classification = if p_wrong.iter().any(|&p| p > 0.5) {
                Classification::Malignant
            } else {
                Classification::Benign
            };
            entries.push(ScanEntry {
                location,
                p_wrong,
                classification,
            });
        }
    }
    Ok(MalignancyMap { rounds, entries })
}

impl Circuit {
    pub fn is_ancilla(&self, wire: usize) -> bool {
        self.wires()
            .get(wire)
            .is_some_and(|w| w.role == WireRole::Ancilla)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_counts() {
        assert_eq!(bitflip_ec_circuit(EcVariant::Flawed).steps(), 8);
        assert_eq!(bitflip_ec_circuit(EcVariant::Safe).steps(), 7);
        assert_eq!(bitflip_ec_rounds(EcVariant::Flawed, 2).steps(), 15);
        assert_eq!(bitflip_ec_rounds(EcVariant::Safe, 2).steps(), 13);
    }

    #[test]
    fn repeat_adds_fresh_ancillas_with_shifted_resets() {
        let c = bitflip_ec_rounds(EcVariant::Flawed, 2);
        assert_eq!(c.wires().len(), 7);
        assert_eq!(c.wires()[5].name, "a0_r2");
        assert_eq!(c.reset_step(3), Some(7));
        assert_eq!(c.reset_step(5), Some(14));
    }

    #[test]
    fn fault_free_round_preserves_codewords() {
        let c = bitflip_ec_rounds(EcVariant::Flawed, 2);
        for bit in 0..2 {
            let last = simulate_dense(&c, &codeword_input(&c, bit)).unwrap().pop().unwrap();
            assert_eq!(decode_majority(&c, &last)[bit as usize], 1.0);
        }
    }

    #[test]
    fn scan_rejects_single_round_and_non_codewords() {
        let c = bitflip_ec_circuit(EcVariant::Safe);
        assert_eq!(malignancy_scan(&c, 1), Err(CircuitError::TooFewRounds(1)));
        assert!(matches!(
            malignancy_scan_from(&c, 2, &[0, 1, 0]),
            Err(CircuitError::NotCodeword(_))
        ));
        assert!(malignancy_scan_from(&c, 2, &[1, 1, 1]).is_ok());
    }
}
