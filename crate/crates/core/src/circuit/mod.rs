//! Circuit intermediate representation over qubit and qutrit wires.
//!
//! A circuit is an ordered gate list, one gate per step, so a circuit with
//! `g` gates has `D = g + 1` snapshots. Ancilla wires can be declared reset
//! from a given step onward; injected single-site faults attach to a
//! snapshot without adding a step.

mod bitflip;
mod gate;
mod random;
pub(crate) mod simulate;
mod text;

pub use bitflip::{
    bitflip_ec_circuit, bitflip_ec_rounds, codeword_input, decode_majority, malignancy_scan,
    malignancy_scan_from, Classification, EcVariant, MalignancyMap,
};
pub use gate::{Control, Gate, GateKind, Polarity, Unitary};
pub use random::random_circuit;
pub use simulate::{apply_error, apply_gate, gate_operator, insert_error, simulate_dense};
pub use text::{parse_circuit, serialize_circuit};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: unknown wire `{name}`")]
    UnknownWire { line: usize, name: String },
    #[error("line {line}: wire `{wire}` is already reset; reset schedules are monotone")]
    NonMonotoneReset { line: usize, wire: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<CircuitError>,
    },
    #[error("wire index {index} out of range for {count} wires")]
    WireOutOfRange { index: usize, count: usize },
    #[error("invalid wire declaration: {0}")]
    InvalidWire(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("invalid reset: {0}")]
    InvalidReset(String),
    #[error("invalid error location: {0}")]
    InvalidLocation(String),
    #[error("state dimension {found} does not match circuit dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("input is not a codeword: {0}")]
    NotCodeword(String),
    #[error("malignancy scan needs at least two rounds, got {0}")]
    TooFewRounds(usize),
}

pub type Result<T> = std::result::Result<T, CircuitError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WireKind {
    Qubit,
    Qutrit,
}

impl WireKind {
    pub fn dim(self) -> usize {
        match self {
            WireKind::Qubit => 2,
            WireKind::Qutrit => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WireRole {
    Data,
    Ancilla,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wire {
    pub name: String,
    pub kind: WireKind,
    pub role: WireRole,
}

impl Wire {
    pub fn new(name: impl Into<String>, kind: WireKind, role: WireRole) -> Self {
        Self {
            name: name.into(),
            kind,
            role,
        }
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }
}

/// Single-site fault operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorOp {
    I,
    X,
    Y,
    Z,
    /// Qutrit leakage `|0> <-> |2>`.
    Leak,
}

impl ErrorOp {
    pub fn name(self) -> &'static str {
        match self {
            ErrorOp::I => "I",
            ErrorOp::X => "X",
            ErrorOp::Y => "Y",
            ErrorOp::Z => "Z",
            ErrorOp::Leak => "LEAK",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s.to_ascii_uppercase().as_str() {
            "I" => ErrorOp::I,
            "X" => ErrorOp::X,
            "Y" => ErrorOp::Y,
            "Z" => ErrorOp::Z,
            "LEAK" | "L" => ErrorOp::Leak,
            _ => return None,
        })
    }
}

impl std::fmt::Display for ErrorOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A single-site fault attached to snapshot `step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ErrorLocation {
    pub step: usize,
    pub wire: usize,
    pub op: ErrorOp,
}

impl ErrorLocation {
    pub fn new(step: usize, wire: usize, op: ErrorOp) -> Self {
        Self { step, wire, op }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Reset {
    pub wire: usize,
    /// First snapshot at which the wire counts as reset.
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    wires: Vec<Wire>,
    gates: Vec<Gate>,
    resets: Vec<Reset>,
    faults: Vec<ErrorLocation>,
}

impl Circuit {
    pub fn new(wires: Vec<Wire>, gates: Vec<Gate>, resets: Vec<Reset>) -> Result<Self> {
        let mut c = Self {
            wires,
            gates: Vec::new(),
            resets: Vec::new(),
            faults: Vec::new(),
        };
        c.validate_wires()?;
        for g in gates {
            c.push_gate(g)?;
        }
        for r in resets {
            c.push_reset(r)?;
        }
        Ok(c)
    }

    pub fn builder() -> CircuitBuilder {
        CircuitBuilder::default()
    }

    fn validate_wires(&self) -> Result<()> {
        for (i, w) in self.wires.iter().enumerate() {
            if w.name.is_empty() || w.name.contains(char::is_whitespace) || w.name.contains('#') {
                return Err(CircuitError::InvalidWire(format!("bad wire name {:?}", w.name)));
            }
            if self.wires[..i].iter().any(|o| o.name == w.name) {
                return Err(CircuitError::InvalidWire(format!("duplicate wire `{}`", w.name)));
            }
        }
        Ok(())
    }

    pub(crate) fn push_gate(&mut self, g: Gate) -> Result<()> {
        g.validate(&self.wires)?;
        self.gates.push(g);
        Ok(())
    }

    pub(crate) fn push_reset(&mut self, r: Reset) -> Result<()> {
        let wire = self.wires.get(r.wire).ok_or(CircuitError::WireOutOfRange {
            index: r.wire,
            count: self.wires.len(),
        })?;
        if wire.role != WireRole::Ancilla {
            return Err(CircuitError::InvalidReset(format!(
                "`{}` is a data wire; only ancillas are reset",
                wire.name
            )));
        }
        if self.resets.iter().any(|o| o.wire == r.wire) {
            return Err(CircuitError::InvalidReset(format!(
                "`{}` is already reset; reset schedules are monotone",
                wire.name
            )));
        }
        self.resets.push(r);
        Ok(())
    }

    /// Checks that every reset and fault refers to an existing snapshot.
    pub(crate) fn validate_steps(&self) -> Result<()> {
        let d = self.steps();
        if let Some(r) = self.resets.iter().find(|r| r.step >= d) {
            return Err(CircuitError::InvalidReset(format!(
                "`{}` reset at step {} but the circuit has {} snapshots",
                self.wires[r.wire].name, r.step, d
            )));
        }
        if let Some(f) = self.faults.iter().find(|f| f.step >= d) {
            return Err(CircuitError::InvalidLocation(format!(
                "fault at step {} but the circuit has {} snapshots",
                f.step, d
            )));
        }
        Ok(())
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn resets(&self) -> &[Reset] {
        &self.resets
    }

    pub fn faults(&self) -> &[ErrorLocation] {
        &self.faults
    }

    /// Number of snapshots `D` (gates + 1).
    pub fn steps(&self) -> usize {
        self.gates.len() + 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.wires.iter().map(Wire::dim).collect()
    }

    pub fn work_dim(&self) -> usize {
        self.wires.iter().map(Wire::dim).product()
    }

    pub fn wire_index(&self, name: &str) -> Option<usize> {
        self.wires.iter().position(|w| w.name == name)
    }

    pub fn data_wires(&self) -> Vec<usize> {
        self.role_wires(WireRole::Data)
    }

    pub fn ancilla_wires(&self) -> Vec<usize> {
        self.role_wires(WireRole::Ancilla)
    }

    fn role_wires(&self, role: WireRole) -> Vec<usize> {
        (0..self.wires.len()).filter(|&i| self.wires[i].role == role).collect()
    }

    pub fn reset_step(&self, wire: usize) -> Option<usize> {
        self.resets.iter().find(|r| r.wire == wire).map(|r| r.step)
    }

    /// Per-wire flag: reset at or before snapshot `step`.
    pub fn reset_mask(&self, step: usize) -> Vec<bool> {
        (0..self.wires.len())
            .map(|w| self.reset_step(w).is_some_and(|s| s <= step))
            .collect()
    }

    /// Same circuit with every wire promoted to a qutrit.
    pub fn to_qutrits(&self) -> Circuit {
        let mut out = self.clone();
        for w in &mut out.wires {
            w.kind = WireKind::Qutrit;
        }
        out
    }

    /// Maps a state of this circuit's register into the register of `other`
    /// (same wire count, each wire at least as large), keeping digits.
    pub fn embed_state(
        &self,
        other: &Circuit,
        state: &crate::linalg::StateVector,
    ) -> Result<crate::linalg::StateVector> {
        if state.dim() != self.work_dim() {
            return Err(CircuitError::DimensionMismatch {
                expected: self.work_dim(),
                found: state.dim(),
            });
        }
        if other.wires.len() != self.wires.len()
            || other.wires.iter().zip(&self.wires).any(|(a, b)| a.dim() < b.dim())
        {
            return Err(CircuitError::InvalidWire(
                "target register cannot hold this circuit's wires".into(),
            ));
        }
        let from = self.dims();
        let to = other.dims();
        let mut out = crate::linalg::StateVector::zeros(other.work_dim());
        for (i, a) in state.amplitudes().iter().enumerate() {
            let digits = digits_of(i, &from);
            out[index_of(&digits, &to)] = *a;
        }
        Ok(out)
    }
}

/// Mixed-radix digits, most significant wire first.
pub fn digits_of(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (d, &n) in digits.iter_mut().zip(dims).rev() {
        *d = index % n;
        index /= n;
    }
    digits
}

pub fn index_of(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Strides of each wire in the mixed-radix basis index.
pub fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Incremental construction by wire name.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    wires: Vec<Wire>,
    gates: Vec<Gate>,
    resets: Vec<Reset>,
}

impl CircuitBuilder {
    pub fn wire(mut self, name: &str, kind: WireKind, role: WireRole) -> Self {
        self.wires.push(Wire::new(name, kind, role));
        self
    }

    pub fn qubit(self, name: &str) -> Self {
        self.wire(name, WireKind::Qubit, WireRole::Data)
    }

    pub fn ancilla(self, name: &str) -> Self {
        self.wire(name, WireKind::Qubit, WireRole::Ancilla)
    }

    pub fn gate(mut self, g: Gate) -> Self {
        self.gates.push(g);
        self
    }

    pub fn reset(mut self, wire: usize, step: usize) -> Self {
        self.resets.push(Reset { wire, step });
        self
    }

    pub fn build(self) -> Result<Circuit> {
        let c = Circuit::new(self.wires, self.gates, self.resets)?;
        c.validate_steps()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip_mixed_radix() {
        let dims = [2, 3, 2];
        for i in 0..12 {
            assert_eq!(index_of(&digits_of(i, &dims), &dims), i);
        }
        assert_eq!(digits_of(7, &dims), vec![1, 0, 1]);
        assert_eq!(strides(&dims), vec![6, 2, 1]);
    }

    #[test]
    fn empty_gate_list_has_one_snapshot() {
        let c = Circuit::builder().qubit("q0").build().unwrap();
        assert_eq!(c.steps(), 1);
    }

    #[test]
    fn duplicate_wire_names_are_rejected() {
        assert!(Circuit::builder().qubit("q").qubit("q").build().is_err());
    }

    #[test]
    fn resets_only_on_ancillas_and_only_once() {
        let base = || Circuit::builder().qubit("d").ancilla("a").gate(Gate::cnot(0, 1));
        assert!(base().reset(1, 1).build().is_ok());
        assert!(base().reset(0, 1).build().is_err());
        assert!(base().reset(1, 1).reset(1, 0).build().is_err());
        assert!(base().reset(1, 2).build().is_err());
    }

    #[test]
    fn reset_mask_is_monotone_in_step() {
        let c = Circuit::builder()
            .qubit("d")
            .ancilla("a")
            .ancilla("b")
            .gate(Gate::cnot(0, 1))
            .gate(Gate::cnot(0, 2))
            .reset(1, 1)
            .reset(2, 2)
            .build()
            .unwrap();
        assert_eq!(c.reset_mask(0), vec![false, false, false]);
        assert_eq!(c.reset_mask(1), vec![false, true, false]);
        assert_eq!(c.reset_mask(2), vec![false, true, true]);
    }
}
