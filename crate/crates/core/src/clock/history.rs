use super::Result;
use crate::circuit::{simulate_dense, Circuit};
use crate::linalg::{StateVector, C64};
use serde::{Deserialize, Serialize};

/// `(1/√D) Σ_t |t> ⊗ snapshot_t` over an integer clock register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryState {
    pub state: StateVector,
    pub steps: usize,
    pub work_dim: usize,
    pub input_label: String,
}

impl HistoryState {
    /// Unnormalised work block at clock `t`.
    pub fn block(&self, t: usize) -> &[C64] {
        &self.state.amplitudes()[t * self.work_dim..(t + 1) * self.work_dim]
    }

    pub fn block_weights(&self) -> Vec<f64> {
        (0..self.steps)
            .map(|t| self.block(t).iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }
}

pub fn history_state(c: &Circuit, input: &StateVector) -> Result<HistoryState> {
    history_state_labeled(c, input, "input")
}

pub(crate) fn history_state_labeled(
    c: &Circuit,
    input: &StateVector,
    label: &str,
) -> Result<HistoryState> {
    let snapshots = simulate_dense(c, input)?;
    Ok(from_snapshots(&snapshots, label))
}

/// Assembles a history state from already simulated snapshots.
pub(crate) fn from_snapshots(snapshots: &[StateVector], label: &str) -> HistoryState {
    let d = snapshots.len();
    let w = snapshots[0].dim();
    let scale = 1.0 / (d as f64).sqrt();
    let mut amps = Vec::with_capacity(d * w);
    for s in snapshots {
        amps.extend(s.amplitudes().iter().map(|a| a * scale));
    }
    HistoryState {
        state: StateVector::new(amps).expect("non-empty"),
        steps: d,
        work_dim: w,
        input_label: label.to_string(),
    }
}
