use super::{CircuitError, Result, Wire};
use crate::linalg::C64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Fires when the control reads 1.
    One,
    /// Fires when the control reads 0.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub wire: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn on(wire: usize) -> Self {
        Self {
            wire,
            polarity: Polarity::One,
        }
    }

    pub fn off(wire: usize) -> Self {
        Self {
            wire,
            polarity: Polarity::Zero,
        }
    }

    /// A control digit of 2 never fires.
    pub fn fires(&self, digit: usize) -> bool {
        match self.polarity {
            Polarity::One => digit == 1,
            Polarity::Zero => digit == 0,
        }
    }
}

/// Dense row-major unitary on `2^k` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    size: usize,
    entries: Vec<C64>,
}

impl Unitary {
    pub const TOLERANCE: f64 = 1e-10;

    pub fn new(size: usize, entries: Vec<C64>) -> Result<Self> {
        if size < 2 || !size.is_power_of_two() || entries.len() != size * size {
            return Err(CircuitError::InvalidGate(format!(
                "custom unitary needs 2^k x 2^k entries, got {} for size {}",
                entries.len(),
                size
            )));
        }
        let u = Self { size, entries };
        let m = u.matrix();
        let defect = (m.adjoint() * &m - DMatrix::identity(size, size))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if !(defect <= Self::TOLERANCE) {
            return Err(CircuitError::NotUnitary(defect));
        }
        Ok(u)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn qubits(&self) -> usize {
        self.size.trailing_zeros() as usize
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.size, self.size, &self.entries)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    H,
    /// Targets are `[control, target]`.
    Cnot,
    Swap,
    Custom(Unitary),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::Cnot => "CNOT",
            GateKind::Swap => "SWAP",
            GateKind::Custom(_) => "U",
        }
    }

    fn single(&self) -> Option<[[C64; 2]; 2]> {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Some(match self {
            GateKind::I => [[o, z], [z, o]],
            GateKind::X => [[z, o], [o, z]],
            GateKind::Y => [[z, -i], [i, z]],
            GateKind::Z => [[o, z], [z, -o]],
            GateKind::H => [[h, h], [h, -h]],
            _ => return None,
        })
    }
}

/// A gate: a unitary on the `{0,1}` subspace of its targets, conditioned on
/// its controls. Single-qubit kinds with several targets act on each target.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>, controls: Vec<Control>) -> Self {
        Self {
            kind,
            targets,
            controls,
        }
    }

    pub fn single(kind: GateKind, target: usize) -> Self {
        Self::new(kind, vec![target], Vec::new())
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target)
    }

    pub fn h(target: usize) -> Self {
        Self::single(GateKind::H, target)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::new(GateKind::Cnot, vec![control, target], Vec::new())
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap, vec![a, b], Vec::new())
    }

    pub fn with_control(mut self, c: Control) -> Self {
        self.controls.push(c);
        self
    }

    /// Every wire the gate touches, targets first.
    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.wire))
    }

    pub(crate) fn validate(&self, wires: &[Wire]) -> Result<()> {
        let count = wires.len();
        if self.targets.is_empty() {
            return Err(CircuitError::InvalidGate(format!(
                "{} has no targets",
                self.kind.name()
            )));
        }
        let all: Vec<usize> = self.wires().collect();
        if let Some(&index) = all.iter().find(|&&w| w >= count) {
            return Err(CircuitError::WireOutOfRange { index, count });
        }
        for (i, w) in all.iter().enumerate() {
            if all[..i].contains(w) {
                return Err(CircuitError::InvalidGate(format!(
                    "{} uses wire `{}` twice",
                    self.kind.name(),
                    wires[*w].name
                )));
            }
        }
        let arity = self.targets.len();
        match &self.kind {
            GateKind::Cnot | GateKind::Swap if arity != 2 => Err(CircuitError::InvalidGate(
                format!("{} takes exactly two targets, got {arity}", self.kind.name()),
            )),
            GateKind::Custom(u) if u.qubits() != arity => Err(CircuitError::InvalidGate(format!(
                "custom unitary acts on {} qubits but has {arity} targets",
                u.qubits()
            ))),
            _ => Ok(()),
        }
    }

    /// Matrix on the targets' `{0,1}` subspace, first target most significant.
    pub fn local_matrix(&self) -> DMatrix<C64> {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        if let Some(s) = self.kind.single() {
            let m = DMatrix::from_fn(2, 2, |r, c| s[r][c]);
            let mut acc = DMatrix::from_element(1, 1, o);
            for _ in &self.targets {
                acc = acc.kronecker(&m);
            }
            return acc;
        }
        match &self.kind {
            GateKind::Cnot => DMatrix::from_fn(4, 4, |r, c| {
                let image = if c >= 2 { c ^ 1 } else { c };
                if r == image {
                    o
                } else {
                    z
                }
            }),
            GateKind::Swap => DMatrix::from_fn(4, 4, |r, c| {
                let image = ((c & 1) << 1) | (c >> 1);
                if r == image {
                    o
                } else {
                    z
                }
            }),
            GateKind::Custom(u) => u.matrix(),
            _ => unreachable!("single-qubit kinds handled above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{WireKind, WireRole};

    fn wires(n: usize) -> Vec<Wire> {
        (0..n)
            .map(|i| Wire::new(format!("q{i}"), WireKind::Qubit, WireRole::Data))
            .collect()
    }

    #[test]
    fn cnot_matrix_flips_target_when_control_set() {
        let m = Gate::cnot(0, 1).local_matrix();
        assert_eq!(m[(3, 2)].re, 1.0);
        assert_eq!(m[(2, 3)].re, 1.0);
        assert_eq!(m[(0, 0)].re, 1.0);
    }

    #[test]
    fn multi_target_is_tensor_power() {
        let m = Gate::new(GateKind::X, vec![0, 1], vec![]).local_matrix();
        assert_eq!(m[(3, 0)].re, 1.0);
        assert_eq!(m[(0, 3)].re, 1.0);
    }

    #[test]
    fn validation_catches_arity_and_overlap() {
        let w = wires(3);
        assert!(Gate::new(GateKind::Cnot, vec![0], vec![]).validate(&w).is_err());
        assert!(Gate::x(0).with_control(Control::on(0)).validate(&w).is_err());
        assert!(Gate::x(5).validate(&w).is_err());
        assert!(Gate::x(2).with_control(Control::off(1)).validate(&w).is_ok());
    }

    #[test]
    fn non_unitary_custom_is_rejected() {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        assert!(matches!(
            Unitary::new(2, vec![one, one, zero, one]),
            Err(CircuitError::NotUnitary(_))
        ));
        assert!(Unitary::new(2, vec![zero, one, one, zero]).is_ok());
        assert!(Unitary::new(3, vec![one; 9]).is_err());
    }
}
