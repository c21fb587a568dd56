mod common;

use common::{close, jacobi_eigenvalues, random_state, real_part};
use ftham::circuit::*;
use ftham::clock::*;
use ftham::linalg::{evolve, lowest_eigenpairs, StateVector};
use ftham::transfer::{pst_couplings, CouplingScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

fn x_circuit() -> Circuit {
    parse_circuit("wire q qubit data\ngate X q\n").unwrap()
}

fn random_circuits(count: usize, seed: u64) -> Vec<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let w = rng.random_range(2..=3);
            let g = rng.random_range(1..=6);
            random_circuit(&mut rng, w, g)
        })
        .collect()
}

#[test]
fn x_circuit_transfers_to_clock_one_with_flipped_qubit() {
    let h = build_feynman(&x_circuit(), &CouplingScheme::new(vec![1.0]).unwrap()).unwrap();
    assert_eq!(h.operator().dim(), 4);
    let out = evolve(h.operator(), &h.embed(0, &StateVector::basis(2, 0)), FRAC_PI_2).unwrap();
    // |clock 1>|1> is index 3.
    assert!(close(out[3].norm(), 1.0, 1e-12));
}

#[test]
fn identity_circuit_returns_input() {
    let c = parse_circuit("wire a qubit data\nwire b qubit data\ngate I a\ngate I b\ngate I a\n").unwrap();
    let h = build_feynman(&c, &pst_couplings(3).unwrap()).unwrap();
    let input = random_state(4, 9);
    let rep = run_computation(&h, &input).unwrap();
    let out = rep.output.unwrap();
    assert!(out.inner(&input).unwrap().norm() >= 1.0 - 1e-8);
}

#[test]
fn integer_and_unary_clocks_agree_on_the_shared_subspace() {
    for (k, c) in random_circuits(4, 21).into_iter().enumerate() {
        let s = pst_couplings(c.steps() - 1).unwrap();
        let hi = build_feynman_with(&c, &s, ClockEncoding::IntegerRegister).unwrap();
        let hu = build_feynman_with(&c, &s, ClockEncoding::PhysicalUnary).unwrap();
        let input = random_state(c.work_dim(), k as u64);
        for t in [0.2, 0.9, 1.4, FRAC_PI_2] {
            let oi = evolve(hi.operator(), &hi.embed(0, &input), t).unwrap();
            let ou = evolve(hu.operator(), &hu.embed(0, &input), t).unwrap();
            let mut inside = 0.0;
            for n in 0..c.steps() {
                let (bi, bu) = (hi.block(&oi, n), hu.block(&ou, n));
                assert!(bi.distance(&bu).unwrap() < 1e-10);
                inside += bu.norm_sqr();
            }
            // Unary dynamics never leave the one-excitation clock subspace.
            assert!(close(inside, 1.0, 1e-12));
        }
    }
}

#[test]
fn unary_operator_has_sigma_form_outside_one_hot_states() {
    // Two-excitation clock patterns also hop: the σ± form acts on the whole
    // clock register, not only on one-hot labels.
    let c = parse_circuit("wire q qubit data\ngate X q\ngate X q\n").unwrap();
    let h = build_feynman_with(&c, &pst_couplings(2).unwrap(), ClockEncoding::PhysicalUnary).unwrap();
    // clock 110 (=6) -> 101 (=5) through the second term with U = X.
    let w = 2;
    assert!(h.operator().get(5 * w + 1, 6 * w).norm() > 0.0);
}

#[test]
fn clock_block_probabilities_sum_to_one() {
    let c = &random_circuits(1, 3)[0];
    let h = build_feynman(c, &pst_couplings(c.steps() - 1).unwrap()).unwrap();
    let input = random_state(c.work_dim(), 4);
    for i in 0..12 {
        let out = evolve(h.operator(), &h.embed(0, &input), 0.15 * i as f64).unwrap();
        let total: f64 = h.clock_probabilities(&out).iter().sum();
        assert!(close(total, 1.0, 1e-12));
    }
}

#[test]
fn twenty_random_circuits_run_perfectly() {
    for (k, c) in random_circuits(20, 2024).into_iter().enumerate() {
        let h = build_feynman(&c, &pst_couplings(c.steps() - 1).unwrap()).unwrap();
        let input = random_state(c.work_dim(), 100 + k as u64);
        let rep = run_computation(&h, &input).unwrap();
        let expected = simulate_dense(&c, &input).unwrap().pop().unwrap();
        let fid = rep.output.as_ref().unwrap().inner(&expected).unwrap().norm();
        assert!(fid >= 1.0 - 1e-8, "{k}: {fid}");
        assert!(rep.clock_arrival_probability >= 1.0 - 1e-8);
        assert!(close(rep.t0, FRAC_PI_2, 1e-6));
    }
}

#[test]
fn flawed_ec_round_preserves_the_zero_codeword() {
    let c = bitflip_ec_circuit(EcVariant::Flawed);
    let h = build_feynman(&c, &pst_couplings(c.steps() - 1).unwrap()).unwrap();
    let input = StateVector::basis(32, 0);
    let rep = run_computation(&h, &input).unwrap();
    assert!(rep.output.unwrap().inner(&input).unwrap().norm() >= 1.0 - 1e-8);
}

#[test]
fn x_circuit_history_state() {
    let hs = history_state(&x_circuit(), &StateVector::basis(2, 0)).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let expected = StateVector::from_real(&[s, 0.0, 0.0, s]).unwrap();
    assert!(hs.state.distance(&expected).unwrap() < 1e-15);
}

#[test]
fn history_states_preserve_inner_products_and_weights() {
    for (k, c) in random_circuits(10, 77).into_iter().enumerate() {
        let w = c.work_dim();
        let (a, b) = (random_state(w, 2 * k as u64), random_state(w, 2 * k as u64 + 1));
        let (ha, hb) = (history_state(&c, &a).unwrap(), history_state(&c, &b).unwrap());
        assert!((ha.state.inner(&hb.state).unwrap() - a.inner(&b).unwrap()).norm() < 1e-12);
        for wt in ha.block_weights() {
            assert!(close(wt, 1.0 / c.steps() as f64, 1e-12));
        }
        let (o0, o1) = (StateVector::basis(w, 0), StateVector::basis(w, 1));
        let ip = history_state(&c, &o0).unwrap().state.inner(&history_state(&c, &o1).unwrap().state).unwrap();
        assert!(ip.norm() < 1e-12);
    }
}

#[test]
fn kitaev_annihilates_history_states() {
    let mut circuits = random_circuits(20, 2024);
    circuits.push(bitflip_ec_circuit(EcVariant::Flawed));
    circuits.push(x_circuit());
    for (k, c) in circuits.iter().enumerate() {
        let hk = build_kitaev(c).unwrap();
        let hs = history_state(c, &random_state(c.work_dim(), k as u64)).unwrap();
        assert!(hk.apply(&hs.state).unwrap().norm() <= 1e-10);
    }
}

#[test]
fn x_circuit_kitaev_ground_state_and_gap() {
    let hk = build_kitaev(&x_circuit()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = StateVector::from_real(&[s, 0.0, 0.0, s]).unwrap();
    assert!(hk.apply(&v).unwrap().norm() < 1e-15);
    let oracle = jacobi_eigenvalues(real_part(&hk));
    // Ground space is two-fold (one history state per input), gap above it.
    assert!(oracle[0].abs() < 1e-12 && oracle[1].abs() < 1e-12);
    let gap = spectral_gap(&hk, 2).unwrap();
    assert!(close(gap, oracle[2] - oracle[1], 1e-9));
    assert!(gap > 0.0);
}

#[test]
fn kitaev_spectrum_matches_closed_form_and_ground_dim_is_work_dim() {
    for (k, c) in random_circuits(20, 2024).into_iter().enumerate() {
        let hk = build_kitaev(&c).unwrap();
        let spec = lowest_eigenpairs(&hk, hk.dim(), 1e-8).unwrap();
        let analytic = kitaev_spectrum(c.steps(), c.work_dim());
        for (a, b) in spec.values().iter().zip(&analytic) {
            assert!(close(*a, *b, 1e-10), "{k}");
        }
        let ground = spec.values().iter().filter(|v| v.abs() < 1e-8).count();
        assert_eq!(ground, c.work_dim());
        let gap = spectral_gap(&hk, c.work_dim()).unwrap();
        let expected = 1.0 - (std::f64::consts::PI / c.steps() as f64).cos();
        assert!(close(gap, expected, 1e-9));
    }
}

#[test]
fn small_two_qubit_circuits_ground_dimension_via_jacobi() {
    // Real gates only so the cyclic-Jacobi oracle applies.
    for text in [
        "wire a qubit data\nwire b qubit data\ngate H a\ngate CNOT a b\ngate X b\n",
        "wire a qubit data\nwire b qubit data\ngate SWAP a b\n",
        "wire a qubit data\nwire b qubit data\ngate Z a ctrl- b\ngate H b\n",
    ] {
        let c = parse_circuit(text).unwrap();
        assert!(c.steps() <= 4);
        let ev = jacobi_eigenvalues(real_part(&build_kitaev(&c).unwrap()));
        assert_eq!(ev.iter().filter(|v| v.abs() < 1e-10).count(), 4);
        assert!(ev.iter().all(|&v| v > -1e-12));
    }
}

#[test]
fn run_report_json_has_the_documented_keys() {
    let h = build_feynman(&x_circuit(), &pst_couplings(1).unwrap()).unwrap();
    let rep = run_computation(&h, &StateVector::basis(2, 0)).unwrap();
    let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
    for key in ["D", "t0", "fidelity", "clock_arrival_probability", "gap"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
