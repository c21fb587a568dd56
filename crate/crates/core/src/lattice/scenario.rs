use super::compile::evolve_on_orbit;
use super::{orbit_subspace, LatticeConfig, LatticeError, LatticeProgram, LocalGate, Result};
use crate::linalg::StateVector;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramEntry {
    pub row: usize,
    pub col: usize,
    /// One gate line over the local wires `m` (mover) and `n` (neighbor).
    pub gate: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioCaps {
    #[serde(default = "default_orbit_cap")]
    pub orbit: usize,
    /// Largest number of non-|2> sites accepted.
    #[serde(default = "default_active_cap")]
    pub active: usize,
}

fn default_active_cap() -> usize {
    16
}

fn default_orbit_cap() -> usize {
    100_000
}

impl Default for ScenarioCaps {
    fn default() -> Self {
        Self {
            orbit: default_orbit_cap(),
            active: default_active_cap(),
        }
    }
}

/// A lattice run described as data: the initial rows (`0`, `1`, `2` per
/// site) and gates at move locations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeScenario {
    pub rows: usize,
    pub cols: usize,
    pub sites: Vec<String>,
    #[serde(default)]
    pub program: Vec<ProgramEntry>,
    #[serde(default)]
    pub caps: ScenarioCaps,
}

impl LatticeScenario {
    pub fn config(&self) -> Result<LatticeConfig> {
        let c = LatticeConfig::from_rows(&self.sites)?;
        if c.rows() != self.rows || c.cols() != self.cols {
            return Err(LatticeError::Shape(format!(
                "sites describe {}x{} but the scenario says {}x{}",
                c.rows(),
                c.cols(),
                self.rows,
                self.cols
            )));
        }
        Ok(c)
    }

    /// One lane over the initial active segment, moving from its row to
    /// the bottom of the lattice.
    pub fn program(&self) -> Result<LatticeProgram> {
        let (row, segment) = self.config()?.active_segment()?;
        let mut p = LatticeProgram::identity_from(self.rows, self.cols, segment, row)?;
        for e in &self.program {
            if p.gates.contains_key(&(e.row, e.col)) {
                return Err(LatticeError::InvalidProgram(format!(
                    "two gates at ({}, {})",
                    e.row, e.col
                )));
            }
            p.gates.insert((e.row, e.col), LocalGate::parse(&e.gate)?);
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub orbit_size: usize,
    pub depth: usize,
    /// Probability of reaching the deepest configurations at the transfer time.
    pub fidelity: f64,
    pub t0: f64,
}

pub fn run_scenario(s: &LatticeScenario) -> Result<ScenarioReport> {
    let init = s.config()?;
    if init.active_count() > s.caps.active {
        return Err(LatticeError::TooManyActive {
            count: init.active_count(),
            cap: s.caps.active,
        });
    }
    let p = s.program()?;
    let basis = orbit_subspace(&init, &p, s.caps.orbit)?;
    let start = StateVector::basis(basis.len(), 0);
    let (peak, out) = evolve_on_orbit(&basis, &p, &start)?;
    let depth = basis.depth();
    let fidelity = (0..basis.len())
        .filter(|&i| basis.depth_of(i) == depth)
        .map(|i| out[i].norm_sqr())
        .sum();
    Ok(ScenarioReport {
        orbit_size: basis.len(),
        depth,
        fidelity,
        t0: peak.t0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_run() {
        let json = r#"{"rows": 3, "cols": 2, "sites": ["10", "22", "22"],
                       "program": [{"row": 0, "col": 0, "gate": "CNOT m n"}]}"#;
        let s: LatticeScenario = serde_json::from_str(json).unwrap();
        let r = run_scenario(&s).unwrap();
        assert_eq!((r.orbit_size, r.depth), (5, 4));
        assert!(r.fidelity > 1.0 - 1e-8);
        let back: LatticeScenario = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn unknown_fields_and_bad_shapes_are_rejected() {
        assert!(serde_json::from_str::<LatticeScenario>(
            r#"{"rows": 2, "cols": 1, "sites": ["0", "2"], "extra": 1}"#
        )
        .is_err());
        let s: LatticeScenario =
            serde_json::from_str(r#"{"rows": 3, "cols": 1, "sites": ["0", "2"]}"#).unwrap();
        assert!(run_scenario(&s).is_err());
    }
}
