mod common;

use common::*;
use ftham::linalg::{
    evolve, lowest_eigenpairs, lowest_eigenpairs_with, EigenOptions, SparseOperator, StateVector,
};
use proptest::prelude::*;

#[test]
fn random_hermitian_evolution_matches_dense_exponential() {
    let h = random_hermitian(8, 11);
    let v = random_state(8, 12);
    let got = evolve(&h, &v, 1.3).unwrap();
    let want = dense_evolve(&h, &v, 1.3);
    assert!(got.distance(&want).unwrap() < 1e-10);
}

#[test]
fn larger_evolution_matches_dense_exponential() {
    for (dim, seed) in [(64usize, 1u64), (200, 2), (512, 3)] {
        let h = random_hermitian(dim, seed);
        let v = random_state(dim, seed + 100);
        let got = evolve(&h, &v, 2.5).unwrap();
        let want = dense_evolve(&h, &v, 2.5);
        let err = got.distance(&want).unwrap();
        assert!(err < 1e-10, "dim {dim}: error {err:e}");
        assert!((got.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn negative_time_inverts_forward_evolution() {
    let h = random_hermitian(16, 5);
    let v = random_state(16, 6);
    let there = evolve(&h, &v, 3.0).unwrap();
    let back = evolve(&h, &there, -3.0).unwrap();
    assert!(back.distance(&v).unwrap() < 1e-10);
}

fn pst_chain_values(n: usize) -> Vec<f64> {
    (0..n).map(|k| ((k + 1) as f64 * (n - k) as f64).sqrt()).collect()
}

#[test]
fn pst_tridiagonal_eigenvalues_match_jacobi_oracle() {
    // 50-dimensional chain: N = 49 couplings
    let h = tridiagonal(&pst_chain_values(49));
    let oracle = jacobi_eigenvalues(real_part(&h));
    for (i, v) in oracle.iter().enumerate() {
        assert!(close(*v, -49.0 + 2.0 * i as f64, 1e-9), "jacobi oracle drifted at {i}");
    }
    let dense = lowest_eigenpairs(&h, 50, 1e-8).unwrap();
    let lanczos = lowest_eigenpairs_with(
        &h,
        10,
        1e-8,
        &EigenOptions {
            dense_threshold: 0,
            ..EigenOptions::default()
        },
    )
    .unwrap();
    for (i, p) in dense.pairs.iter().enumerate() {
        assert!(close(p.value, oracle[i], 1e-9));
    }
    for (i, p) in lanczos.pairs.iter().enumerate() {
        assert!(close(p.value, oracle[i], 1e-9), "lanczos pair {i}: {}", p.value);
    }
}

fn check_pairs(h: &SparseOperator, k: usize, opts: &EigenOptions) {
    let s = lowest_eigenpairs_with(h, k, 1e-8, opts).unwrap();
    for w in s.pairs.windows(2) {
        assert!(w[0].value <= w[1].value);
    }
    for p in &s.pairs {
        let hv = h.apply(&p.vector).unwrap();
        let r = hv.distance(&p.vector.scaled(p.value.into())).unwrap();
        assert!(r <= 1e-9, "residual {r:e}");
    }
    for (i, a) in s.pairs.iter().enumerate() {
        for (j, b) in s.pairs.iter().enumerate() {
            let g = a.vector.inner(&b.vector).unwrap();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((g - ftham::linalg::C64::new(want, 0.0)).norm() <= 1e-9);
        }
    }
}

#[test]
fn residuals_and_gram_matrix_on_both_solver_paths() {
    let h = random_hermitian(60, 21);
    check_pairs(&h, 6, &EigenOptions::default());
    check_pairs(
        &h,
        6,
        &EigenOptions {
            dense_threshold: 0,
            ..EigenOptions::default()
        },
    );
}

#[test]
fn lanczos_path_agrees_with_dense_path() {
    let h = random_hermitian(90, 8);
    let dense = lowest_eigenpairs(&h, 5, 1e-8).unwrap();
    let iter = lowest_eigenpairs_with(
        &h,
        5,
        1e-8,
        &EigenOptions {
            dense_threshold: 0,
            ..EigenOptions::default()
        },
    )
    .unwrap();
    for (a, b) in dense.pairs.iter().zip(&iter.pairs) {
        assert!(close(a.value, b.value, 1e-9));
        assert!(a.vector.fidelity(&b.vector).unwrap() > 1.0 - 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_preserves_norm(seed in 0u64..1000, dim in 2usize..40, t in -6.0f64..6.0) {
        let h = random_hermitian(dim, seed);
        let v = random_state(dim, seed ^ 0xABCD);
        let out = evolve(&h, &v, t).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn evolution_composes(seed in 0u64..1000, dim in 2usize..30, t1 in 0.0f64..3.0, t2 in 0.0f64..3.0) {
        let h = random_hermitian(dim, seed);
        let v = random_state(dim, seed + 7);
        let two_step = evolve(&h, &evolve(&h, &v, t1).unwrap(), t2).unwrap();
        let one_step = evolve(&h, &v, t1 + t2).unwrap();
        prop_assert!(two_step.distance(&one_step).unwrap() <= 1e-9);
    }

    #[test]
    fn hermitian_canonical_form_is_exactly_conjugate_symmetric(seed in 0u64..1000, dim in 1usize..12) {
        let h = random_hermitian(dim, seed);
        for (r, c, a) in h.entries() {
            prop_assert_eq!(a, h.get(c, r).conj());
        }
    }
}

#[test]
fn identity_apply_is_exact() {
    let v = random_state(7, 3);
    assert_eq!(SparseOperator::identity(7).apply(&v).unwrap(), v);
    assert_eq!(SparseOperator::zero(7).apply(&v).unwrap(), StateVector::zeros(7));
}
