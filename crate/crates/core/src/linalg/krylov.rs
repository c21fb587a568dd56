use nalgebra::{DMatrix, SymmetricEigen};

use super::{LinalgError, Result, SparseOperator, StateVector, C64};

/// Orthonormal Krylov basis with its tridiagonal projection.
#[derive(Debug, Clone)]
pub(crate) struct LanczosBasis {
    pub vectors: Vec<Vec<C64>>,
    pub alpha: Vec<f64>,
    /// `beta[j]` couples basis vectors `j` and `j + 1`.
    pub beta: Vec<f64>,
    /// Norm of the residual left after the last vector; zero on breakdown.
    pub residual: f64,
    pub breakdown: bool,
}

impl LanczosBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn tridiagonal(&self) -> DMatrix<f64> {
        let m = self.len();
        let mut t = DMatrix::zeros(m, m);
        for j in 0..m {
            t[(j, j)] = self.alpha[j];
            if j + 1 < m {
                t[(j, j + 1)] = self.beta[j];
                t[(j + 1, j)] = self.beta[j];
            }
        }
        t
    }

    /// `sum_j coeffs[j] * vectors[j]`.
    pub fn combine(&self, coeffs: &[C64]) -> Vec<C64> {
        let dim = self.vectors[0].len();
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for (q, &cj) in self.vectors.iter().zip(coeffs) {
            for (o, &x) in out.iter_mut().zip(q) {
                *o += cj * x;
            }
        }
        out
    }
}

pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Removes components along every vector in `against` (two passes).
pub(crate) fn orthogonalize(w: &mut [C64], against: &[Vec<C64>]) {
    for _ in 0..2 {
        for q in against {
            let p = dot(q, w);
            if p != C64::new(0.0, 0.0) {
                for (x, &y) in w.iter_mut().zip(q) {
                    *x -= p * y;
                }
            }
        }
    }
}

/// Hermitian Lanczos with full reorthogonalisation against the basis and
/// the `locked` vectors. `start` must be normalised.
pub(crate) fn lanczos(
    op: &SparseOperator,
    start: &[C64],
    max_dim: usize,
    breakdown_tol: f64,
    locked: &[Vec<C64>],
) -> LanczosBasis {
    let dim = op.dim();
    let mut vectors: Vec<Vec<C64>> = vec![start.to_vec()];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut w = vec![C64::new(0.0, 0.0); dim];
    loop {
        let j = vectors.len() - 1;
        op.apply_into(&vectors[j], &mut w);
        let a = dot(&vectors[j], &w).re;
        alpha.push(a);
        for (x, &q) in w.iter_mut().zip(&vectors[j]) {
            *x -= a * q;
        }
        if j > 0 {
            let b = beta[j - 1];
            for (x, &q) in w.iter_mut().zip(&vectors[j - 1]) {
                *x -= b * q;
            }
        }
        orthogonalize(&mut w, &vectors);
        orthogonalize(&mut w, locked);
        let b = norm(&w);
        if b <= breakdown_tol {
            return LanczosBasis {
                vectors,
                alpha,
                beta,
                residual: 0.0,
                breakdown: true,
            };
        }
        if vectors.len() == max_dim {
            return LanczosBasis {
                vectors,
                alpha,
                beta,
                residual: b,
                breakdown: false,
            };
        }
        beta.push(b);
        vectors.push(w.iter().map(|x| x / b).collect());
    }
}

/// Lanczos coefficients `(alpha, beta)` from a normalised `start`, run until
/// the residual norm drops below `breakdown_tol` or `max_dim` vectors exist.
pub(crate) fn krylov_lanczos(
    op: &SparseOperator,
    start: &StateVector,
    max_dim: usize,
    breakdown_tol: f64,
) -> (Vec<f64>, Vec<f64>) {
    let basis = lanczos(op, start.amplitudes(), max_dim, breakdown_tol, &[]);
    (basis.alpha, basis.beta)
}

/// Controls for the short-step Krylov propagator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Local error allowed per accepted step.
    pub tolerance: f64,
    pub krylov_dim: usize,
    pub max_steps: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            krylov_dim: 40,
            max_steps: 100_000,
        }
    }
}

/// `exp(-i op t) v` with default options.
pub fn evolve(op: &SparseOperator, v: &StateVector, t: f64) -> Result<StateVector> {
    evolve_with(op, v, t, &EvolveOptions::default())
}

pub fn evolve_with(
    op: &SparseOperator,
    v: &StateVector,
    t: f64,
    opts: &EvolveOptions,
) -> Result<StateVector> {
    if !op.is_hermitian() {
        return Err(LinalgError::RequiresHermitian);
    }
    if v.dim() != op.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: op.dim(),
            found: v.dim(),
        });
    }
    let n0 = v.norm();
    if (n0 - 1.0).abs() > 1e-10 {
        return Err(LinalgError::NotNormalized(n0));
    }
    if t == 0.0 {
        return Ok(v.clone());
    }

    let sign = t.signum();
    let total = t.abs();
    let mut elapsed = 0.0;
    let mut w = v.amplitudes().to_vec();
    let mut tau = total;
    let krylov_dim = opts.krylov_dim.clamp(1, op.dim());

    for _ in 0..opts.max_steps {
        let remaining = total - elapsed;
        if remaining <= 0.0 {
            return StateVector::new(w);
        }
        let scale = norm(&w);
        let start: Vec<C64> = w.iter().map(|x| x / scale).collect();
        let basis = lanczos(op, &start, krylov_dim, 1e-14, &[]);
        let eig = SymmetricEigen::new(basis.tridiagonal());
        let m = basis.len();

        // first row of the eigenvector matrix, i.e. Q^T e_1
        let q0: Vec<f64> = (0..m).map(|k| eig.eigenvectors[(0, k)]).collect();
        let coeffs = |step: f64| -> Vec<C64> {
            let phases: Vec<C64> = (0..m)
                .map(|k| C64::from_polar(q0[k], -sign * eig.eigenvalues[k] * step))
                .collect();
            (0..m)
                .map(|j| (0..m).map(|k| phases[k] * eig.eigenvectors[(j, k)]).sum())
                .collect()
        };

        let mut step = if basis.breakdown { remaining } else { tau.min(remaining) };
        let mut c = coeffs(step);
        let mut first_try = true;
        if !basis.breakdown {
            while basis.residual * c[m - 1].norm() > opts.tolerance {
                step *= 0.5;
                c = coeffs(step);
                first_try = false;
            }
        }
        let next = basis.combine(&c);
        w = next.iter().map(|x| x * scale).collect();
        elapsed += step;
        tau = if first_try { (2.0 * step).min(total) } else { step };
    }
    Err(LinalgError::StepLimit(opts.max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn pauli_x_quarter_period() {
        let x = SparseOperator::from_triplets(2, vec![(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))], true)
            .unwrap();
        let out = evolve(&x, &StateVector::basis(2, 0), FRAC_PI_2).unwrap();
        assert!((out[0] - c(0.0, 0.0)).norm() < 1e-14);
        assert!((out[1] - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_time_is_identity() {
        let x = SparseOperator::diagonal(&[1.0, 2.0, 3.0]);
        let v = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)]).unwrap();
        assert_eq!(evolve(&x, &v, 0.0).unwrap(), v);
    }

    #[test]
    fn rejects_non_hermitian_and_unnormalized() {
        let a = SparseOperator::from_triplets(2, vec![(0, 1, c(1.0, 0.0))], false).unwrap();
        assert_eq!(
            evolve(&a, &StateVector::basis(2, 0), 1.0),
            Err(LinalgError::RequiresHermitian)
        );
        let h = SparseOperator::identity(2);
        let v = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(evolve(&h, &v, 1.0), Err(LinalgError::NotNormalized(_))));
    }

    #[test]
    fn diagonal_evolution_is_pure_phase() {
        let h = SparseOperator::diagonal(&[0.5, -1.5]);
        let v = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let out = evolve(&h, &v, 2.0).unwrap();
        assert!((out[0] - C64::from_polar(0.6, -1.0)).norm() < 1e-13);
        assert!((out[1] - C64::from_polar(0.8, 3.0)).norm() < 1e-13);
    }
}
