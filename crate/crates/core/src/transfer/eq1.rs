use super::{
    corner_state, effective_chain, hypercube_hamiltonian, CouplingScheme, HypercubeSpec, Result,
    TransferError,
};
use serde::{Deserialize, Serialize};

/// `J_i = (i+1) / (2(2i+1))` for `i = 0..N`.
pub fn approx_couplings(n: usize) -> Result<CouplingScheme> {
    if n < 1 {
        return Err(TransferError::InvalidLength(n));
    }
    CouplingScheme::new(
        (0..n)
            .map(|i| (i as f64 + 1.0) / (2.0 * (2.0 * i as f64 + 1.0)))
            .collect(),
    )
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Running products `J~_i = Π_{j<=i} J_j^2`.
fn running_products(s: &CouplingScheme) -> Vec<f64> {
    s.couplings()
        .iter()
        .scan(1.0, |acc, j| {
            *acc *= j * j;
            Some(*acc)
        })
        .collect()
}

/// Evaluates, for `r = 0..=2N`,
/// `L~_r = Σ_{i<r} J~_i K~_{r-i-1} C(r+1, i+1)^2 + J~_r + K~_r`
/// with `J~_i = Π_{j<=i} J_j^2` and `J~_i = 0` outside `0..N`.
pub fn eval_eq1(j: &CouplingScheme, k: &CouplingScheme) -> Result<Vec<f64>> {
    if j.len() != k.len() {
        return Err(TransferError::LengthMismatch {
            left: j.len(),
            right: k.len(),
        });
    }
    let n = j.len();
    let (jt, kt) = (running_products(j), running_products(k));
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    Ok((0..=2 * n)
        .map(|r| {
            let cross: f64 = (0..r)
                .map(|i| {
                    at(&jt, i) * at(&kt, r - i - 1) * binomial(r as u64 + 1, i as u64 + 1).powi(2)
                })
                .sum();
            cross + at(&jt, r) + at(&kt, r)
        })
        .collect())
}

/// `Σ_i C(N+1, i)^2`, summed term by term.
pub fn central_binomial_sum(n: u32) -> u128 {
    let m = n as u128 + 1;
    let mut c = 1u128;
    let mut total = 0u128;
    for i in 0..=m {
        total += c * c;
        c = c * (m - i) / (i + 1);
    }
    total
}

/// `2^{N+1} (2N+1)!! / (N+1)!`.
pub fn central_binomial_closed_form(n: u32) -> u128 {
    let n = n as u128;
    let double_fact: u128 = (1..=2 * n + 1).step_by(2).product();
    let fact: u128 = (1..=n + 1).product();
    (1u128 << (n + 1)) * double_fact / fact
}

/// Side-by-side values for the approximate couplings at one length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq1Report {
    pub n: usize,
    pub j: Vec<f64>,
    pub k: Vec<f64>,
    /// `L~_r` as evaluated by [`eval_eq1`].
    pub literal: Vec<f64>,
    /// Squared effective couplings from tridiagonalising the grid.
    pub reduction_squared: Vec<f64>,
    /// Reference figures quoted for comparison only (label, value).
    pub reference: Vec<(String, f64)>,
}

/// Uses `J = approx_couplings(n)` and the mirrored `K_m = J_{N-1-m}`.
pub fn eq1_report(n: usize) -> Result<Eq1Report> {
    let j = approx_couplings(n)?;
    let k = CouplingScheme::new(j.couplings().iter().rev().copied().collect())?;
    let literal = eval_eq1(&j, &k)?;
    let spec = HypercubeSpec::new(vec![j.clone(), k.clone()])?;
    let h = hypercube_hamiltonian(&spec, usize::MAX)?;
    let chain = effective_chain(&h, &corner_state(&spec, false))?;
    Ok(Eq1Report {
        n,
        j: j.into_inner(),
        k: k.into_inner(),
        literal,
        reduction_squared: chain.couplings().iter().map(|l| l * l).collect(),
        reference: vec![("L_0^2".into(), 3.0 / 4.0), ("L_1^2".into(), 35.0 / 36.0)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_values() {
        let a = approx_couplings(3).unwrap();
        assert_eq!(a[0], 0.5);
        assert!((a[1] - 1.0 / 3.0).abs() < 1e-16);
        assert!((a[2] - 0.3).abs() < 1e-16);
    }

    #[test]
    fn binomial_identity_small_cases() {
        assert_eq!(central_binomial_sum(1), 6);
        for n in 0..20 {
            assert_eq!(central_binomial_sum(n), central_binomial_closed_form(n));
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = approx_couplings(2).unwrap();
        let b = approx_couplings(3).unwrap();
        assert!(matches!(eval_eq1(&a, &b), Err(TransferError::LengthMismatch { .. })));
    }
}
