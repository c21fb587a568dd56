use super::{chain_hamiltonian, CouplingScheme, Result, TransferError};
use crate::linalg::{krylov_lanczos, LinalgError, SparseOperator, StateVector};
use serde::{Deserialize, Serialize};

pub const MAX_AXES: usize = 4;

/// Product of chains, one per axis; axis 0 is the most significant factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypercubeSpec {
    axes: Vec<CouplingScheme>,
}

impl HypercubeSpec {
    pub fn new(axes: Vec<CouplingScheme>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_AXES {
            return Err(TransferError::AxisCount {
                found: axes.len(),
                max: MAX_AXES,
            });
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[CouplingScheme] {
        &self.axes
    }

    pub fn k(&self) -> usize {
        self.axes.len()
    }

    pub fn dim(&self) -> usize {
        self.axes.iter().map(CouplingScheme::sites).product()
    }

    /// Graph distance between opposite corners.
    pub fn corner_distance(&self) -> usize {
        self.axes.iter().map(CouplingScheme::len).sum()
    }

    /// Every axis extended to the longest length with the longest axis's
    /// tail (identity-padding of the shorter threads).
    pub fn padded(&self) -> HypercubeSpec {
        let longest = self
            .axes
            .iter()
            .max_by_key(|a| a.len())
            .expect("at least one axis")
            .clone();
        HypercubeSpec {
            axes: self.axes.iter().map(|a| a.padded_with(&longest)).collect(),
        }
    }
}

/// `H = Σ_axis 1 ⊗ H_axis ⊗ 1`, refusing dimensions above `cap`.
pub fn hypercube_hamiltonian(h: &HypercubeSpec, cap: usize) -> Result<SparseOperator> {
    let dim = h.dim();
    if dim > cap {
        return Err(TransferError::DimensionCap { dim, cap });
    }
    let sizes: Vec<usize> = h.axes.iter().map(CouplingScheme::sites).collect();
    let mut total = SparseOperator::zero(dim);
    for (a, axis) in h.axes.iter().enumerate() {
        let left: usize = sizes[..a].iter().product();
        let right: usize = sizes[a + 1..].iter().product();
        total = total.add(&chain_hamiltonian(axis).embed(left, right))?;
    }
    Ok(total)
}

/// The all-zero corner, or the opposite corner when `far`.
pub fn corner_state(h: &HypercubeSpec, far: bool) -> StateVector {
    let dim = h.dim();
    StateVector::basis(dim, if far { dim - 1 } else { 0 })
}

/// Off-diagonal coefficients of the tridiagonal reduction of `op` seeded
/// at `start`, stopping once the residual norm falls below 1e-12.
pub fn effective_chain(op: &SparseOperator, start: &StateVector) -> Result<CouplingScheme> {
    if !op.is_hermitian() {
        return Err(LinalgError::RequiresHermitian.into());
    }
    if start.dim() != op.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: op.dim(),
            found: start.dim(),
        }
        .into());
    }
    if !start.is_normalized(1e-10) {
        return Err(LinalgError::NotNormalized(start.norm()).into());
    }
    let (_, beta) = krylov_lanczos(op, start, op.dim(), 1e-12);
    if let Some(step) = beta.iter().position(|b| !b.is_finite()) {
        return Err(TransferError::Breakdown { step });
    }
    CouplingScheme::new(beta).map_err(|_| TransferError::Breakdown { step: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::pst_couplings;

    #[test]
    fn one_axis_is_the_chain() {
        let s = pst_couplings(3).unwrap();
        let h = hypercube_hamiltonian(&HypercubeSpec::new(vec![s.clone()]).unwrap(), 1 << 20).unwrap();
        assert_eq!(h, chain_hamiltonian(&s));
    }

    #[test]
    fn cap_and_axis_count_are_enforced() {
        let s = pst_couplings(3).unwrap();
        let spec = HypercubeSpec::new(vec![s.clone(); 2]).unwrap();
        assert_eq!(
            hypercube_hamiltonian(&spec, 15),
            Err(TransferError::DimensionCap { dim: 16, cap: 15 })
        );
        assert!(HypercubeSpec::new(vec![s; 5]).is_err());
        assert!(HypercubeSpec::new(vec![]).is_err());
    }

    #[test]
    fn eigenvector_start_breaks_down_at_step_zero() {
        let op = SparseOperator::diagonal(&[1.0, 2.0]);
        assert_eq!(
            effective_chain(&op, &StateVector::basis(2, 0)),
            Err(TransferError::Breakdown { step: 0 })
        );
    }
}
