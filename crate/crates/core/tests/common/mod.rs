//! Test-only oracles, deliberately independent of the library's solvers.
#![allow(dead_code)]

use ftham::linalg::{SparseOperator, StateVector, C64};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense `exp(-i H t) v` through a full eigendecomposition.
pub fn dense_evolve(h: &SparseOperator, v: &StateVector, t: f64) -> StateVector {
    let eig = SymmetricEigen::new(h.to_dense());
    let n = h.dim();
    let x = nalgebra::DVector::from_iterator(n, v.amplitudes().iter().copied());
    let coeffs = eig.eigenvectors.adjoint() * x;
    let phased = nalgebra::DVector::from_iterator(
        n,
        (0..n).map(|k| coeffs[k] * C64::from_polar(1.0, -eig.eigenvalues[k] * t)),
    );
    let out = &eig.eigenvectors * phased;
    StateVector::new(out.iter().copied().collect()).unwrap()
}

/// Cyclic Jacobi rotations for a real symmetric matrix; ascending eigenvalues.
pub fn jacobi_eigenvalues(mut a: DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    vals
}

pub fn real_part(op: &SparseOperator) -> DMatrix<f64> {
    op.to_dense().map(|z| z.re)
}

pub fn random_hermitian(dim: usize, seed: u64) -> SparseOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triplets = Vec::new();
    for r in 0..dim {
        triplets.push((r, r, C64::new(rng.random::<f64>() * 2.0 - 1.0, 0.0)));
        for c in r + 1..dim {
            let z = C64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0);
            triplets.push((r, c, z));
            triplets.push((c, r, z.conj()));
        }
    }
    SparseOperator::from_triplets(dim, triplets, true).unwrap()
}

pub fn random_state(dim: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = StateVector::new(
        (0..dim)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect(),
    )
    .unwrap();
    v.normalized().unwrap()
}

/// Hopping chain with the given couplings, built without the library's
/// transfer module.
pub fn tridiagonal(couplings: &[f64]) -> SparseOperator {
    let n = couplings.len() + 1;
    let mut triplets = Vec::new();
    for (i, &j) in couplings.iter().enumerate() {
        triplets.push((i, i + 1, C64::new(j, 0.0)));
        triplets.push((i + 1, i, C64::new(j, 0.0)));
    }
    SparseOperator::from_triplets(n, triplets, true).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
