use super::{
    approx_couplings, corner_state, hypercube_hamiltonian, CouplingScheme, HypercubeSpec, Result,
    TransferError,
};
use crate::linalg::krylov_lanczos;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub seed: u64,
    /// Total start points: approximate, uniform, then random perturbations.
    pub starts: usize,
    pub max_iterations: usize,
    /// Objective value below which a run counts as converged.
    pub success_threshold: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            starts: 4,
            max_iterations: 400,
            success_threshold: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    /// `[J, K]`.
    pub couplings: Vec<Vec<f64>>,
    /// `Σ_r (L_r - target_r)^2` over the target indices.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub max_deviation: f64,
    /// Effective couplings reached, one per target index.
    pub effective: Vec<f64>,
    /// Norm of the effective couplings past the target length.
    pub tail_norm: f64,
    /// Objective after every accepted step, starting with the initial value.
    pub history: Vec<f64>,
    pub start_index: usize,
}

struct Problem {
    n: usize,
    target: Vec<f64>,
}

impl Problem {
    fn schemes(&self, x: &[f64]) -> (CouplingScheme, CouplingScheme) {
        // Clamped so extreme trial steps stay representable.
        let e: Vec<f64> = x.iter().map(|v| v.clamp(-40.0, 40.0).exp()).collect();
        (
            CouplingScheme::new(e[..self.n].to_vec()).expect("exp is positive"),
            CouplingScheme::new(e[self.n..].to_vec()).expect("exp is positive"),
        )
    }

    fn chain(&self, x: &[f64], max_len: usize) -> Vec<f64> {
        let (j, k) = self.schemes(x);
        let spec = HypercubeSpec::new(vec![j, k]).expect("two axes");
        let h = hypercube_hamiltonian(&spec, usize::MAX).expect("no cap");
        let (_, beta) = krylov_lanczos(&h, &corner_state(&spec, false), max_len + 1, 1e-12);
        beta
    }

    fn residual(&self, x: &[f64]) -> DVector<f64> {
        let beta = self.chain(x, self.target.len());
        DVector::from_fn(self.target.len(), |i, _| {
            beta.get(i).copied().unwrap_or(0.0) - self.target[i]
        })
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let h = 1e-6;
        let mut jac = DMatrix::zeros(self.target.len(), x.len());
        let mut xp = x.to_vec();
        for p in 0..x.len() {
            xp[p] = x[p] + h;
            let up = self.residual(&xp);
            xp[p] = x[p] - h;
            let down = self.residual(&xp);
            xp[p] = x[p];
            jac.set_column(p, &((up - down) / (2.0 * h)));
        }
        jac
    }
}

struct Run {
    x: Vec<f64>,
    objective: f64,
    history: Vec<f64>,
}

/// Levenberg–Marquardt over log-couplings; only objective-decreasing steps
/// are accepted.
fn levenberg_marquardt(p: &Problem, mut x: Vec<f64>, max_iterations: usize) -> Run {
    let mut r = p.residual(&x);
    let mut f = r.norm_squared();
    let mut history = vec![f];
    let mut lambda = 1e-3;
    for _ in 0..max_iterations {
        if f < 1e-28 {
            break;
        }
        let jac = p.jacobian(&x);
        let a = jac.transpose() * &jac;
        let g = jac.transpose() * &r;
        let mut accepted = false;
        while lambda < 1e16 {
            let mut damped = a.clone();
            for i in 0..damped.nrows() {
                damped[(i, i)] += lambda * a[(i, i)].max(1e-12);
            }
            let Some(delta) = damped.lu().solve(&(-&g)) else {
                lambda *= 4.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(delta.iter()).map(|(a, b)| a + b).collect();
            let rt = p.residual(&trial);
            let ft = rt.norm_squared();
            if ft.is_finite() && ft < f {
                let gain = (f - ft) / f;
                x = trial;
                r = rt;
                f = ft;
                history.push(f);
                lambda = (lambda / 3.0).max(1e-15);
                accepted = gain > 1e-14;
                break;
            }
            lambda *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    Run {
        x,
        objective: f,
        history,
    }
}

/// [`solve_couplings_with`] under default options.
pub fn solve_couplings(target: &[f64], k: usize, n: usize) -> Result<SolverReport> {
    solve_couplings_with(target, k, n, &SolverOptions::default())
}

/// Fits two axis schemes of length `n` whose grid reduces, from the corner,
/// to an effective chain matching `target` (length `2n`). Infeasibility is
/// reported through `converged = false` and the residual.
pub fn solve_couplings_with(
    target: &[f64],
    k: usize,
    n: usize,
    opts: &SolverOptions,
) -> Result<SolverReport> {
    if k != 2 {
        return Err(TransferError::UnsupportedK(k));
    }
    let target = CouplingScheme::new(target.to_vec())?;
    if target.len() != k * n {
        return Err(TransferError::LengthMismatch {
            left: target.len(),
            right: k * n,
        });
    }
    let problem = Problem {
        n,
        target: target.into_inner(),
    };
    let approx = approx_couplings(n)?;
    let mut base: Vec<f64> = approx.couplings().iter().map(|v| v.ln()).collect();
    base.extend(approx.couplings().iter().rev().map(|v| v.ln()));
    let starts: Vec<Vec<f64>> = (0..opts.starts.max(1))
        .map(|i| match i {
            0 => base.clone(),
            1 => vec![0.0; 2 * n],
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
                base.iter().map(|v| v + rng.random_range(-0.5..0.5)).collect()
            }
        })
        .collect();
    let runs: Vec<Run> = starts
        .into_par_iter()
        .map(|x0| levenberg_marquardt(&problem, x0, opts.max_iterations))
        .collect();
    let (start_index, best) = runs
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.objective.total_cmp(&b.1.objective).then(a.0.cmp(&b.0)))
        .expect("at least one start");
    let (j, kk) = problem.schemes(&best.x);
    let full = problem.chain(&best.x, (n + 1) * (n + 1));
    let m = problem.target.len();
    let effective: Vec<f64> = (0..m).map(|i| full.get(i).copied().unwrap_or(0.0)).collect();
    let max_deviation = effective
        .iter()
        .zip(&problem.target)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let tail_norm = full.iter().skip(m).fold(0.0, |acc, v| acc + v * v).sqrt();
    Ok(SolverReport {
        couplings: vec![j.into_inner(), kk.into_inner()],
        residual: best.objective,
        iterations: best.history.len() - 1,
        converged: best.objective <= opts.success_threshold,
        max_deviation,
        effective,
        tail_norm,
        history: best.history,
        start_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(solve_couplings(&[1.0, 1.0], 3, 1), Err(TransferError::UnsupportedK(3)));
        assert!(matches!(
            solve_couplings(&[1.0, -1.0], 2, 1),
            Err(TransferError::NonPositive { index: 1, .. })
        ));
        assert!(matches!(
            solve_couplings(&[1.0, 1.0, 1.0], 2, 1),
            Err(TransferError::LengthMismatch { .. })
        ));
    }
}
