//! Implicit-clock qutrit lattice.
//!
//! Every site starts in `|2>` except the active row, which carries the work
//! qubits. Five-site move terms shift the active row forward one qutrit at a
//! time (left-to-right on even rows, right-to-left on odd rows), applying a
//! two-qutrit gate between the moving qutrit and the next one to move. The
//! position of the active region plays the role of the clock.

mod compile;
mod orbit;
mod scenario;
mod terms;
mod threads;

pub use compile::{compile_circuit, lattice_vs_circuit_check, EquivalenceReport};
pub use orbit::{lattice_hamiltonian, orbit_from_labels, orbit_subspace, OrbitBasis};
pub use scenario::{run_scenario, LatticeScenario, ProgramEntry, ScenarioCaps, ScenarioReport};
pub use terms::{build_rl_terms, Direction, LocalGate, MoveTerm, Site, SiteCondition};
pub use threads::{thread_blocking_check, Thread, ThreadReport, ThreadScenario};

use crate::circuit::CircuitError;
use crate::linalg::LinalgError;
use crate::transfer::TransferError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::Range;
use thiserror::Error;

/// Site value of an empty (inactive) qutrit.
pub const EMPTY: u8 = 2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("invalid lattice shape: {0}")]
    Shape(String),
    #[error("lattice has no active (non-|2>) site")]
    NoActiveRegion,
    #[error("{count} active sites exceed the cap of {cap}")]
    TooManyActive { count: usize, cap: usize },
    #[error("orbit exceeds the cap of {cap} configurations")]
    OrbitCap { cap: usize },
    #[error("scheme has {scheme} couplings but the orbit depth is {depth}")]
    DepthMismatch { depth: usize, scheme: usize },
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("cannot compile: {0}")]
    Unsupported(String),
    #[error("gate {gate} does not fit in {rows} rows")]
    CompileOverflow { gate: usize, rows: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A full assignment of site values, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeConfig {
    rows: usize,
    cols: usize,
    sites: Vec<u8>,
}

impl LatticeConfig {
    pub fn new(rows: usize, cols: usize, sites: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 || sites.len() != rows * cols {
            return Err(LatticeError::Shape(format!(
                "{} sites for a {rows}x{cols} lattice",
                sites.len()
            )));
        }
        if let Some(v) = sites.iter().find(|&&v| v > EMPTY) {
            return Err(LatticeError::Shape(format!("site value {v} is not a qutrit level")));
        }
        Ok(Self { rows, cols, sites })
    }

    /// Rows as strings of `0`, `1`, `2`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().chars().count()).unwrap_or(0);
        let mut sites = Vec::new();
        for r in rows {
            let r = r.as_ref();
            if r.chars().count() != cols {
                return Err(LatticeError::Shape("rows have different widths".into()));
            }
            for ch in r.chars() {
                sites.push(match ch {
                    '0' => 0,
                    '1' => 1,
                    '2' => 2,
                    _ => return Err(LatticeError::Shape(format!("bad site character {ch:?}"))),
                });
            }
        }
        Self::new(rows.len(), cols, sites)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn sites(&self) -> &[u8] {
        &self.sites
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.sites[row * self.cols + col]
    }

    pub fn active_count(&self) -> usize {
        self.sites.iter().filter(|&&v| v != EMPTY).count()
    }

    /// The single contiguous active segment `(row, columns)`.
    pub fn active_segment(&self) -> Result<(usize, Range<usize>)> {
        let active: Vec<usize> = (0..self.sites.len()).filter(|&i| self.sites[i] != EMPTY).collect();
        let (&first, &last) = match (active.first(), active.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(LatticeError::NoActiveRegion),
        };
        let row = first / self.cols;
        if last / self.cols != row || active.len() != last - first + 1 {
            return Err(LatticeError::Shape(
                "active sites must form one contiguous segment of a row".into(),
            ));
        }
        Ok((row, first % self.cols..last % self.cols + 1))
    }
}

/// A column range that moves forward through a range of transitions
/// (`s -> s+1` for `s` in `transitions`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lane {
    pub cols: Range<usize>,
    pub transitions: Range<usize>,
}

/// Gate assignment per move location plus lane layout and extra guards.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeProgram {
    pub rows: usize,
    pub cols: usize,
    pub lanes: Vec<Lane>,
    /// Keyed by `(source row, mover column)`.
    pub gates: BTreeMap<(usize, usize), LocalGate>,
    pub guards: BTreeMap<(usize, usize), Vec<SiteCondition>>,
}

impl LatticeProgram {
    /// Identity program with one lane over `cols` spanning every row.
    pub fn identity(rows: usize, cols: usize, lane: Range<usize>) -> Result<Self> {
        Self::identity_from(rows, cols, lane, 0)
    }

    /// Identity program whose lane starts moving at row `first`.
    pub fn identity_from(rows: usize, cols: usize, lane: Range<usize>, first: usize) -> Result<Self> {
        if rows < 2 {
            return Err(LatticeError::Shape(format!("need at least two rows, got {rows}")));
        }
        if lane.start >= lane.end || lane.end > cols || first + 1 >= rows {
            return Err(LatticeError::Shape(format!("lane {lane:?} outside {rows}x{cols}")));
        }
        Ok(Self {
            rows,
            cols,
            lanes: vec![Lane {
                cols: lane,
                transitions: first..rows - 1,
            }],
            gates: BTreeMap::new(),
            guards: BTreeMap::new(),
        })
    }

    pub fn with_gate(mut self, row: usize, col: usize, gate: LocalGate) -> Self {
        self.gates.insert((row, col), gate);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rows_and_finds_segment() {
        let c = LatticeConfig::from_rows(&["201", "222"]).unwrap();
        assert_eq!(c.active_count(), 2);
        assert_eq!(c.active_segment().unwrap(), (0, 1..3));
        assert!(LatticeConfig::from_rows(&["222", "222"]).unwrap().active_segment().is_err());
        assert!(LatticeConfig::from_rows(&["021", "222"]).unwrap().active_segment().is_err());
        assert!(LatticeConfig::from_rows(&["03"]).is_err());
        assert!(LatticeConfig::from_rows(&["00", "0"]).is_err());
    }
}
