use super::{FaultError, LogicalPair, Result};
use crate::circuit::{apply_error, insert_error, simulate_dense, ErrorLocation, ErrorOp};
use crate::linalg::{StateVector, C64};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// `<history0| V_wire |history1>` with no tracing: `(1/D) Σ_t <s0_t|V|s1_t>`.
pub fn direct_overlap(pair: &LogicalPair, v: ErrorOp, wire: usize) -> Result<C64> {
    let c = pair.circuit();
    let mut sum = C64::new(0.0, 0.0);
    for (t, (a, b)) in pair.snapshots(0).iter().zip(pair.snapshots(1)).enumerate() {
        let vb = apply_error(c, ErrorLocation::new(t, wire, v), b)?;
        sum += a.inner(&vb)?;
    }
    Ok(sum / pair.steps() as f64)
}

/// `‖M_a† M_b‖_1` where `M` reshapes a pure state into (kept × traced)
/// wires: the fidelity `‖√ρ_a √ρ_b‖_1` of the kept reductions.
fn reduced_fidelity(a: &StateVector, b: &StateVector, dims: &[usize], traced: &[bool]) -> f64 {
    let kept_dim: usize = dims.iter().zip(traced).filter(|(_, &t)| !t).map(|(d, _)| d).product();
    let traced_dim: usize = dims.iter().zip(traced).filter(|(_, &t)| t).map(|(d, _)| d).product();
    let mut ma = DMatrix::<C64>::zeros(kept_dim, traced_dim);
    let mut mb = DMatrix::<C64>::zeros(kept_dim, traced_dim);
    for i in 0..a.dim() {
        let (mut rem, mut k, mut r) = (i, 0, 0);
        let mut kstride = 1;
        let mut rstride = 1;
        for (w, &d) in dims.iter().enumerate().rev() {
            let digit = rem % d;
            rem /= d;
            if traced[w] {
                r += digit * rstride;
                rstride *= d;
            } else {
                k += digit * kstride;
                kstride *= d;
            }
        }
        ma[(k, r)] = a[i];
        mb[(k, r)] = b[i];
    }
    let x = ma.adjoint() * mb;
    x.singular_values().iter().sum::<f64>().min(1.0)
}

/// Per-step fidelities between the clean `input0` branch and the `input1`
/// branch carrying the fault at `loc`, with wires reset by each step
/// traced out. Leakage faults promote the register to qutrits.
pub fn revised_overlap_trace(pair: &LogicalPair, loc: ErrorLocation) -> Result<Vec<f64>> {
    if loc.op == ErrorOp::Leak && !pair.is_qutrit() {
        return revised_overlap_trace(&pair.promoted()?, loc);
    }
    let c = pair.circuit();
    let faulty = insert_error(c, loc)?;
    let branch = simulate_dense(&faulty, pair.input(1))?;
    let dims = c.dims();
    Ok(pair
        .snapshots(0)
        .iter()
        .zip(&branch)
        .enumerate()
        .map(|(t, (a, b))| reduced_fidelity(a, b, &dims, &c.reset_mask(t)))
        .collect())
}

/// `(1/D) Σ_t F_t` over [`revised_overlap_trace`].
pub fn revised_overlap(pair: &LogicalPair, loc: ErrorLocation) -> Result<f64> {
    let f = revised_overlap_trace(pair, loc)?;
    Ok(f.iter().sum::<f64>() / f.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapEntry {
    pub location: ErrorLocation,
    pub overlap: f64,
    pub trace: Vec<f64>,
    pub malignant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapSummary {
    pub max_overlap: f64,
    #[serde(rename = "D")]
    pub steps: usize,
    pub variant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    #[serde(rename = "D")]
    pub steps: usize,
    pub bound: f64,
    pub variant: Option<String>,
    pub entries: Vec<OverlapEntry>,
}

/// Slack when comparing an overlap with `1/D`.
pub const BOUND_TOL: f64 = 1e-12;

impl OverlapReport {
    pub fn max_overlap(&self) -> f64 {
        self.entries.iter().map(|e| e.overlap).fold(0.0, f64::max)
    }

    pub fn malignant(&self) -> impl Iterator<Item = &OverlapEntry> {
        self.entries.iter().filter(|e| e.malignant)
    }

    pub fn summary(&self) -> OverlapSummary {
        OverlapSummary {
            max_overlap: self.max_overlap(),
            steps: self.steps,
            variant: self.variant.clone(),
        }
    }

    /// `step,wire,operator,overlap,bound_1_over_D,malignant_flag` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,wire,operator,overlap,bound_1_over_D,malignant_flag\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{:.17e},{:.17e},{}",
                e.location.step,
                e.location.wire,
                e.location.op.name(),
                e.overlap,
                self.bound,
                e.malignant
            );
        }
        out
    }
}

/// Revised overlap at every `(step, wire, op)`, ordered by step, then wire,
/// then the order of `ops`. Leakage in `ops` promotes the whole register.
pub fn overlap_scan(
    pair: &LogicalPair,
    ops: &[ErrorOp],
    cap: usize,
    variant: Option<&str>,
) -> Result<OverlapReport> {
    let promoted;
    let pair = if ops.contains(&ErrorOp::Leak) {
        promoted = pair.promoted()?;
        &promoted
    } else {
        pair
    };
    let dim = pair.circuit().work_dim();
    if dim > cap {
        return Err(FaultError::CapExceeded { dim, cap });
    }
    let d = pair.steps();
    let wires = pair.circuit().wires().len();
    let locations: Vec<ErrorLocation> = (0..d)
        .flat_map(|t| (0..wires).flat_map(move |w| ops.iter().map(move |&op| ErrorLocation::new(t, w, op))))
        .collect();
    let bound = 1.0 / d as f64;
    let entries = locations
        .into_par_iter()
        .map(|loc| {
            let trace = revised_overlap_trace(pair, loc)?;
            let overlap = trace.iter().sum::<f64>() / d as f64;
            Ok(OverlapEntry {
                location: loc,
                overlap,
                trace,
                malignant: overlap >= bound - BOUND_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OverlapReport {
        steps: d,
        bound,
        variant: variant.map(str::to_string),
        entries,
    })
}
