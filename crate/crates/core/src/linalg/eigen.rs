use std::ops::Range;

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::krylov::{dot, lanczos, norm, orthogonalize};
use super::{LinalgError, Result, SparseOperator, StateVector, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: StateVector,
}

/// Ascending eigenpairs with their degeneracy clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub pairs: Vec<EigenPair>,
    /// Index ranges into `pairs`; consecutive eigenvalues closer than the
    /// degeneracy tolerance share a cluster.
    pub clusters: Vec<Range<usize>>,
}

impl Spectrum {
    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn ground_cluster(&self) -> Range<usize> {
        self.clusters[0].clone()
    }

    /// Spread `max - min` of the eigenvalues in the first `count` pairs.
    pub fn spread(&self, count: usize) -> f64 {
        let vals = &self.pairs[..count.min(self.pairs.len())];
        match (vals.first(), vals.last()) {
            (Some(a), Some(b)) => b.value - a.value,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Operators with `dim` below this are diagonalised densely.
    pub dense_threshold: usize,
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub residual_tol: f64,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            dense_threshold: 2048,
            krylov_dim: 120,
            max_restarts: 400,
            residual_tol: 1e-10,
            seed: 0,
        }
    }
}

/// The `k` lowest eigenpairs of a Hermitian operator, ascending.
pub fn lowest_eigenpairs(op: &SparseOperator, k: usize, degeneracy_tol: f64) -> Result<Spectrum> {
    lowest_eigenpairs_with(op, k, degeneracy_tol, &EigenOptions::default())
}

pub fn lowest_eigenpairs_with(
    op: &SparseOperator,
    k: usize,
    degeneracy_tol: f64,
    opts: &EigenOptions,
) -> Result<Spectrum> {
    if !op.is_hermitian() {
        return Err(LinalgError::RequiresHermitian);
    }
    if k > op.dim() {
        return Err(LinalgError::TooManyEigenpairs {
            requested: k,
            dim: op.dim(),
        });
    }
    let mut pairs = if op.dim() < opts.dense_threshold {
        dense_lowest(op, k)
    } else {
        locked_lanczos(op, k, opts)?
    };
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let clusters = clusters(&pairs, degeneracy_tol);
    // deterministic basis inside each cluster: Gram-Schmidt in discovery order
    for range in &clusters {
        let mut done: Vec<Vec<C64>> = Vec::new();
        for i in range.clone() {
            let v = &mut pairs[i].1;
            orthogonalize(v, &done);
            let n = norm(v);
            v.iter_mut().for_each(|x| *x /= n);
            fix_phase(v);
            done.push(v.clone());
        }
    }
    let pairs = pairs
        .into_iter()
        .map(|(value, v)| EigenPair {
            value,
            vector: StateVector::new(v).expect("nonempty eigenvector"),
        })
        .collect();
    Ok(Spectrum { pairs, clusters })
}

fn clusters(pairs: &[(f64, Vec<C64>)], tol: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=pairs.len() {
        if i == pairs.len() || (pairs[i].0 - pairs[i - 1].0).abs() > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Rotates the global phase so the largest component is real and positive.
fn fix_phase(v: &mut [C64]) {
    let mut best = C64::new(0.0, 0.0);
    for &x in v.iter() {
        if x.norm() > best.norm() + 1e-12 {
            best = x;
        }
    }
    if best.norm() > 0.0 {
        let phase = best.conj() / best.norm();
        v.iter_mut().for_each(|x| *x *= phase);
    }
}

fn dense_lowest(op: &SparseOperator, k: usize) -> Vec<(f64, Vec<C64>)> {
    let eig = SymmetricEigen::new(op.to_dense());
    let mut order: Vec<usize> = (0..op.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order
        .into_iter()
        .take(k)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors.column(i).iter().copied().collect()))
        .collect()
}

/// One eigenpair at a time: restarted Lanczos on the complement of the
/// already converged vectors.
fn locked_lanczos(op: &SparseOperator, k: usize, opts: &EigenOptions) -> Result<Vec<(f64, Vec<C64>)>> {
    let dim = op.dim();
    let mut found: Vec<(f64, Vec<C64>)> = Vec::with_capacity(k);
    let mut locked: Vec<Vec<C64>> = Vec::with_capacity(k);
    let mut hv = vec![C64::new(0.0, 0.0); dim];
    for i in 0..k {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
        let mut x: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let mut last_residual = f64::INFINITY;
        let mut converged = None;
        for _ in 0..opts.max_restarts {
            orthogonalize(&mut x, &locked);
            let n = norm(&x);
            x.iter_mut().for_each(|v| *v /= n);
            let space = (dim - locked.len()).min(opts.krylov_dim).max(1);
            let basis = lanczos(op, &x, space, 1e-13, &locked);
            let eig = SymmetricEigen::new(basis.tridiagonal());
            let lowest = (0..basis.len())
                .min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
                .expect("nonempty basis");
            let y: Vec<C64> = eig
                .eigenvectors
                .column(lowest)
                .iter()
                .map(|&r| C64::new(r, 0.0))
                .collect();
            x = basis.combine(&y);
            orthogonalize(&mut x, &locked);
            let n = norm(&x);
            x.iter_mut().for_each(|v| *v /= n);
            op.apply_into(&x, &mut hv);
            let theta = dot(&x, &hv).re;
            let residual = hv
                .iter()
                .zip(&x)
                .map(|(h, v)| (h - theta * v).norm_sqr())
                .sum::<f64>()
                .sqrt();
            last_residual = residual;
            if residual <= opts.residual_tol {
                converged = Some(theta);
                break;
            }
        }
        match converged {
            Some(theta) => {
                locked.push(x.clone());
                found.push((theta, x));
            }
            None => {
                return Err(LinalgError::NoConvergence {
                    iterations: opts.max_restarts,
                    residual: last_residual,
                })
            }
        }
    }
    Ok(found)
}
