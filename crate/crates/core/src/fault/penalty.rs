use super::{FaultError, LogicalPair, Result};
use crate::circuit::{index_of, strides, Circuit};
use crate::clock::{history_state, DEGENERACY_TOL};
use crate::linalg::{lowest_eigenpairs, SparseOperator, StateVector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PenaltyMode {
    /// Every flag costs `J`.
    Equal,
    /// A flag at concatenation level `m` costs `(d+1)^m J`.
    Scaled,
}

/// `|1><1|` on `wire` at clock steps `from..=to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PenaltyFlag {
    pub wire: usize,
    pub from: usize,
    pub to: usize,
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltySpec {
    pub flags: Vec<PenaltyFlag>,
    pub j: f64,
    /// Code distance `d`.
    pub distance: u32,
    pub mode: PenaltyMode,
}

impl PenaltySpec {
    pub fn strength(&self, flag: &PenaltyFlag) -> f64 {
        match self.mode {
            PenaltyMode::Equal => self.j,
            PenaltyMode::Scaled => f64::from(self.distance + 1).powi(flag.level as i32) * self.j,
        }
    }

    pub fn with_j(&self, j: f64) -> Self {
        Self { j, ..self.clone() }
    }

    /// Diagonal of `Σ_flags strength · |t><t| ⊗ |1><1|_wire` on the
    /// `(clock, work)` register of `c`.
    pub fn diagonal(&self, c: &Circuit) -> Result<Vec<f64>> {
        if self.j.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(FaultError::NonPositive { name: "J", value: self.j });
        }
        let (d, w) = (c.steps(), c.work_dim());
        let st = strides(&c.dims());
        let dims = c.dims();
        let mut diag = vec![0.0; d * w];
        for f in &self.flags {
            if f.wire >= dims.len() || f.from > f.to || f.to >= d {
                return Err(FaultError::FlagUnresolved {
                    wire: f.wire,
                    from: f.from,
                    to: f.to,
                });
            }
            let s = self.strength(f);
            for t in f.from..=f.to {
                for k in 0..w {
                    if (k / st[f.wire]) % dims[f.wire] == 1 {
                        diag[t * w + k] += s;
                    }
                }
            }
        }
        Ok(diag)
    }
}

/// Ancilla flags for an error-correction round: each ancilla must start
/// in `|0>` (checked at step 0) and must read `|0>` once the syndrome is
/// decoded at the last step. All flags sit at concatenation level 1.
pub fn bitflip_penalties(c: &Circuit, j: f64, mode: PenaltyMode) -> PenaltySpec {
    let last = c.steps() - 1;
    let mut flags = Vec::new();
    for a in c.ancilla_wires() {
        flags.push(PenaltyFlag {
            wire: a,
            from: 0,
            to: 0,
            level: 1,
        });
        flags.push(PenaltyFlag {
            wire: a,
            from: last,
            to: last,
            level: 1,
        });
    }
    PenaltySpec {
        flags,
        j,
        distance: 3,
        mode,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputRise {
    /// Data-wire bits of the input, ancillas in `|0>`.
    pub data: String,
    pub codeword: bool,
    /// `<h|H'|h> − <h|H|h>` for the input's normalised history state.
    pub rise: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltyReport {
    pub ground_dim: usize,
    pub lowest: Vec<f64>,
    pub spread: f64,
    pub gap: f64,
    pub codeword_energies: [f64; 2],
    pub rises: Vec<InputRise>,
    /// Smallest rise over non-codeword data inputs.
    pub min_rise: f64,
}

/// Adds the flag penalties to a clock Hamiltonian of the pair's circuit and
/// reports the resulting low spectrum and the energy of every data input's
/// history state.
pub fn apply_penalties(
    hk: &SparseOperator,
    pair: &LogicalPair,
    spec: &PenaltySpec,
) -> Result<(SparseOperator, PenaltyReport)> {
    let c = pair.circuit();
    let diag = spec.diagonal(c)?;
    if hk.dim() != diag.len() {
        return Err(FaultError::Geometry {
            op: hk.dim(),
            basis: diag.len(),
        });
    }
    let penalty = SparseOperator::diagonal(&diag);
    let h = hk.add(&penalty)?;

    let spectrum = lowest_eigenpairs(&h, 4.min(h.dim()), DEGENERACY_TOL)?;
    let lowest = spectrum.values();
    let ground_dim = lowest.iter().take_while(|&&v| v - lowest[0] <= DEGENERACY_TOL).count();
    let spread = lowest[ground_dim - 1] - lowest[0];
    let gap = lowest.get(ground_dim).map_or(f64::INFINITY, |v| v - lowest[ground_dim - 1]);

    let energy = |v: &StateVector| h.expectation(v);
    let codeword_energies = [
        energy(&pair.history(0).state)?,
        energy(&pair.history(1).state)?,
    ];

    let data = c.data_wires();
    let dims = c.dims();
    let mut rises = Vec::new();
    for bits in 0..1usize << data.len() {
        let mut digits = vec![0; dims.len()];
        let mut label = String::new();
        for (k, &w) in data.iter().enumerate() {
            let b = (bits >> (data.len() - 1 - k)) & 1;
            digits[w] = b;
            label.push(if b == 1 { '1' } else { '0' });
        }
        let hist = history_state(c, &StateVector::basis(c.work_dim(), index_of(&digits, &dims)))?;
        rises.push(InputRise {
            codeword: bits == 0 || bits == (1 << data.len()) - 1,
            data: label,
            rise: penalty.expectation(&hist.state)?,
        });
    }
    let min_rise = rises
        .iter()
        .filter(|r| !r.codeword)
        .map(|r| r.rise)
        .fold(f64::INFINITY, f64::min);
    Ok((
        h,
        PenaltyReport {
            ground_dim,
            lowest,
            spread,
            gap,
            codeword_energies,
            rises,
            min_rise,
        },
    ))
}
