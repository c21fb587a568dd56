//! Quantum circuits realised as the dynamics of fixed local Hamiltonians.
//!
//! The crate builds Feynman-style clock Hamiltonians and implicit-clock
//! qutrit-lattice Hamiltonians whose couplings follow perfect-state-transfer
//! schemes, so that evolving for a fixed time carries a circuit's input to
//! its output exactly. The resulting history-state eigenvectors are then
//! used to compare error-correction circuits that do and do not propagate a
//! single fault into a logical error.

pub mod circuit;
pub mod clock;
pub mod fault;
pub mod lattice;
pub mod linalg;
pub mod suite;
pub mod transfer;
