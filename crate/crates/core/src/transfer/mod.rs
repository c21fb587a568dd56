//! Coupling design for perfect state transfer on chains and hypercubes.

mod chain;
mod eq1;
mod hypercube;
mod solver;

pub use chain::{
    chain_hamiltonian, chain_spectrum, locate_transfer_time, locate_transfer_time_in,
    pst_couplings, transfer_amplitude, transfer_fidelity, TransferPeak,
};
pub use eq1::{
    approx_couplings, central_binomial_closed_form, central_binomial_sum, eq1_report, eval_eq1,
    Eq1Report,
};
pub use hypercube::{corner_state, effective_chain, hypercube_hamiltonian, HypercubeSpec};
pub use solver::{solve_couplings, solve_couplings_with, SolverOptions, SolverReport};

use crate::linalg::LinalgError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransferError {
    #[error("chain length must be at least 1, got {0}")]
    InvalidLength(usize),
    #[error("coupling {index} must be positive and finite, got {value}")]
    NonPositive { index: usize, value: f64 },
    #[error("coupling scheme is empty")]
    Empty,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("hypercube needs 1 to {max} axes, got {found}")]
    AxisCount { found: usize, max: usize },
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("tridiagonalisation broke down at step {step}")]
    Breakdown { step: usize },
    #[error("only k = 2 is supported by the solver, got {0}")]
    UnsupportedK(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, TransferError>;

/// Ordered positive couplings `J_0 .. J_{N-1}` of an `N+1`-site chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CouplingScheme(Vec<f64>);

impl CouplingScheme {
    pub fn new(couplings: Vec<f64>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(TransferError::Empty);
        }
        if let Some((index, &value)) = couplings
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(TransferError::NonPositive { index, value });
        }
        Ok(Self(couplings))
    }

    pub fn uniform(len: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn couplings(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of chain sites, `len + 1`.
    pub fn sites(&self) -> usize {
        self.0.len() + 1
    }

    pub fn is_mirror_symmetric(&self, tol: f64) -> bool {
        let n = self.0.len();
        (0..n).all(|i| (self.0[i] - self.0[n - 1 - i]).abs() <= tol)
    }

    /// Extends the scheme to `len` couplings with the tail of `longer`.
    pub fn padded_with(&self, longer: &CouplingScheme) -> CouplingScheme {
        let mut out = self.0.clone();
        if longer.len() > out.len() {
            out.extend_from_slice(&longer.0[out.len()..]);
        }
        CouplingScheme(out)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl<'de> Deserialize<'de> for CouplingScheme {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        CouplingScheme::new(v).map_err(serde::de::Error::custom)
    }
}

impl std::ops::Index<usize> for CouplingScheme {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_entries() {
        assert_eq!(CouplingScheme::new(vec![]), Err(TransferError::Empty));
        assert!(matches!(
            CouplingScheme::new(vec![1.0, -0.5]),
            Err(TransferError::NonPositive { index: 1, .. })
        ));
        assert!(CouplingScheme::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn json_is_a_plain_array_and_validates() {
        let s = CouplingScheme::new(vec![1.0, 2.5]).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1.0,2.5]");
        let back: CouplingScheme = serde_json::from_str("[1.0,2.5]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<CouplingScheme>("[1.0,0.0]").is_err());
    }

    #[test]
    fn padding_uses_the_longer_tail() {
        let a = CouplingScheme::new(vec![1.0]).unwrap();
        let b = CouplingScheme::new(vec![3.0, 4.0, 5.0]).unwrap();
        assert_eq!(a.padded_with(&b).couplings(), &[1.0, 4.0, 5.0]);
        assert_eq!(b.padded_with(&a), b);
    }
}
