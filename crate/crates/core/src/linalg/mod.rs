//! Sparse Hermitian linear algebra shared by every Hamiltonian builder.
//!
//! Operators are stored in compressed-row form after canonicalisation.
//! Time evolution uses a short-step Lanczos propagator; extremal eigenpairs
//! come from a dense solver below a size threshold and from a locked,
//! fully reorthogonalised Lanczos iteration above it.

mod eigen;
mod krylov;
mod sparse;
mod state;

pub use eigen::{lowest_eigenpairs, lowest_eigenpairs_with, EigenOptions, EigenPair, Spectrum};
pub(crate) use krylov::krylov_lanczos;
pub use krylov::{evolve, evolve_with, EvolveOptions};
pub use sparse::{apply, OperatorBuilder, SparseOperator};
pub use state::StateVector;

use thiserror::Error;

/// Double-precision complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Tolerance used when checking conjugate symmetry of assembled operators.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) is out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
    #[error("operator is not Hermitian at ({row}, {col}): deviation {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },
    #[error("operation requires an operator carrying the Hermitian flag")]
    RequiresHermitian,
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("requested {requested} eigenpairs from a {dim}-dimensional operator")]
    TooManyEigenpairs { requested: usize, dim: usize },
    #[error("eigensolver did not converge after {iterations} restarts (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("time evolution exceeded {0} Krylov steps")]
    StepLimit(usize),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
