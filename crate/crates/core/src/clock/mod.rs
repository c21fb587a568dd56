//! Clock Hamiltonians built from circuits.
//!
//! The Feynman form hops a clock register forward while applying the next
//! gate to the work register; with perfect-transfer couplings the clock
//! arrives at its last position after a fixed time carrying the circuit's
//! output. The Kitaev form is the frustration-free projector version whose
//! zero-energy states are exactly the history states.

mod feynman;
mod history;
mod kitaev;

pub use feynman::{build_feynman, build_feynman_with, run_computation, ClockEncoding, ClockHamiltonian, RunReport};
pub use history::{history_state, HistoryState};
pub use kitaev::{build_kitaev, kitaev_spectrum, spectral_gap, DEGENERACY_TOL};

use crate::circuit::CircuitError;
use crate::linalg::LinalgError;
use crate::transfer::TransferError;
use thiserror::Error;

/// Largest step count accepted by the physical-unary encoding.
pub const MAX_UNARY_STEPS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClockError {
    #[error("scheme has {found} couplings but the circuit needs {expected}")]
    SchemeLength { expected: usize, found: usize },
    #[error("physical-unary clocks support at most {max} steps, circuit has {steps}")]
    TooManySteps { steps: usize, max: usize },
    #[error(
        "scheme does not transfer perfectly: fidelity {fidelity}, clock arrival {arrival} at t = {t0}"
    )]
    NotPerfect { fidelity: f64, arrival: f64, t0: f64 },
    #[error("expected a {expected}-fold ground space: spread {spread:e}, gap {gap:e}")]
    DegeneracyMismatch { expected: usize, spread: f64, gap: f64 },
    #[error("ground dimension {requested} is invalid for an operator of dimension {dim}")]
    InvalidGroundDim { requested: usize, dim: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

pub type Result<T> = std::result::Result<T, ClockError>;
