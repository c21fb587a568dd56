use super::{ClockError, Result};
use crate::circuit::{gate_operator, Circuit};
use crate::linalg::{lowest_eigenpairs, OperatorBuilder, SparseOperator};

/// `Σ_t ½(P_t + P_{t+1}) ⊗ 1 − ½(|t+1><t| ⊗ U_{t+1} + h.c.)` over an integer
/// clock register. Positive semidefinite, annihilates every history state.
pub fn build_kitaev(c: &Circuit) -> Result<SparseOperator> {
    let d = c.steps();
    let w = c.work_dim();
    let mut b = OperatorBuilder::new(d * w);
    for t in 0..d - 1 {
        for k in 0..w {
            b.push_diagonal(t * w + k, 0.5);
            b.push_diagonal((t + 1) * w + k, 0.5);
        }
        for (i, k, a) in gate_operator(c, t)?.entries() {
            b.push_hopping((t + 1) * w + i, t * w + k, -0.5 * a);
        }
    }
    Ok(b.build_hermitian()?)
}

/// Closed-form spectrum `{1 − cos(πk/D)}` with multiplicity `W` each.
pub fn kitaev_spectrum(steps: usize, work_dim: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..steps)
        .flat_map(|k| {
            let e = 1.0 - (std::f64::consts::PI * k as f64 / steps as f64).cos();
            std::iter::repeat_n(e, work_dim)
        })
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Cluster tolerance for the expected ground space.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// `λ_g − λ_{g−1}` for expected ground dimension `g`, after checking that
/// the lowest `g` eigenvalues form one cluster that is separated from the
/// next.
pub fn spectral_gap(op: &SparseOperator, ground_dim: usize) -> Result<f64> {
    if ground_dim == 0 || ground_dim >= op.dim() {
        return Err(ClockError::InvalidGroundDim {
            requested: ground_dim,
            dim: op.dim(),
        });
    }
    let spec = lowest_eigenpairs(op, ground_dim + 1, DEGENERACY_TOL)?;
    let v = spec.values();
    let spread = v[ground_dim - 1] - v[0];
    let gap = v[ground_dim] - v[ground_dim - 1];
    if spread > DEGENERACY_TOL || gap <= DEGENERACY_TOL {
        return Err(ClockError::DegeneracyMismatch {
            expected: ground_dim,
            spread,
            gap,
        });
    }
    Ok(gap)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn pauli_z_gap_is_two() {
        let z = SparseOperator::diagonal(&[1.0, -1.0]);
        assert!((spectral_gap(&z, 1).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn threefold_ground_space_with_two_expected_is_reported() {
        let op = SparseOperator::diagonal(&[0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            spectral_gap(&op, 2),
            Err(ClockError::DegeneracyMismatch { expected: 2, .. })
        ));
    }

    #[test]
    fn x_circuit_kitaev_entries() {
        let c = Circuit::builder().qubit("q").gate(Gate::x(0)).build().unwrap();
        let h = build_kitaev(&c).unwrap();
        assert_eq!(h.dim(), 4);
        let c = |v: f64| crate::linalg::C64::new(v, 0.0);
        assert_eq!(h.get(0, 0), c(0.5));
        assert_eq!(h.get(3, 0), c(-0.5));
        assert_eq!(h.get(2, 0), c(0.0));
    }
}
