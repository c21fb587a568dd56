use super::{CouplingScheme, Result, TransferError};
use crate::linalg::{OperatorBuilder, SparseOperator, C64};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

/// `J_n = sqrt((n+1)(N-n))` for `n = 0..N`.
pub fn pst_couplings(n: usize) -> Result<CouplingScheme> {
    if n < 1 {
        return Err(TransferError::InvalidLength(n));
    }
    let nf = n as f64;
    CouplingScheme::new(
        (0..n)
            .map(|i| ((i as f64 + 1.0) * (nf - i as f64)).sqrt())
            .collect(),
    )
}

/// Tridiagonal hopping operator with off-diagonal entries `J_n`.
pub fn chain_hamiltonian(s: &CouplingScheme) -> SparseOperator {
    let mut b = OperatorBuilder::new(s.sites());
    for (n, &j) in s.couplings().iter().enumerate() {
        b.push_hopping(n + 1, n, C64::new(j, 0.0));
    }
    b.build_hermitian().expect("chain hopping is Hermitian")
}

fn dense_chain(s: &CouplingScheme) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let n = s.sites();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (i, &j) in s.couplings().iter().enumerate() {
        m[(i, i + 1)] = j;
        m[(i + 1, i)] = j;
    }
    SymmetricEigen::new(m)
}

/// Ascending chain eigenvalues.
pub fn chain_spectrum(s: &CouplingScheme) -> Vec<f64> {
    let mut v: Vec<f64> = dense_chain(s).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Spectral representation of `<N| e^{-iHt} |0>`: weights `v_k[0] v_k[N]`
/// and eigenvalues.
struct EndToEnd {
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl EndToEnd {
    fn new(s: &CouplingScheme) -> Self {
        let eig = dense_chain(s);
        let last = s.sites() - 1;
        let weights = (0..s.sites())
            .map(|k| eig.eigenvectors[(0, k)] * eig.eigenvectors[(last, k)])
            .collect();
        Self {
            weights,
            values: eig.eigenvalues.iter().copied().collect(),
        }
    }

    fn amplitude(&self, t: f64) -> C64 {
        self.weights
            .iter()
            .zip(&self.values)
            .map(|(&w, &l)| C64::from_polar(w, -l * t))
            .sum()
    }
}

pub fn transfer_amplitude(s: &CouplingScheme, t: f64) -> C64 {
    EndToEnd::new(s).amplitude(t)
}

/// `|<N| e^{-iHt} |0>|`.
pub fn transfer_fidelity(s: &CouplingScheme, t: f64) -> f64 {
    transfer_amplitude(s, t).norm().min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferPeak {
    pub t0: f64,
    pub fidelity: f64,
}

/// Locates the end-to-end fidelity peak over `(0, 2 Σ 1/J_n]`.
pub fn locate_transfer_time(s: &CouplingScheme) -> TransferPeak {
    let window = 2.0 * s.couplings().iter().map(|j| 1.0 / j).sum::<f64>();
    locate_transfer_time_in(s, window)
}

/// Grid scan followed by golden-section refinement of every local maximum
/// close to the best grid value. Ties within 1e-9 resolve to the earliest time.
pub fn locate_transfer_time_in(s: &CouplingScheme, t_max: f64) -> TransferPeak {
    let e = EndToEnd::new(s);
    let f = |t: f64| e.amplitude(t).norm();
    let scale = e.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let dt = (0.02 / scale).min(t_max / 64.0);
    let steps = (t_max / dt).ceil() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| f(i as f64 * dt)).collect();
    let best_grid = grid.iter().copied().fold(0.0, f64::max);
    let mut best = TransferPeak {
        t0: 0.0,
        fidelity: grid[0],
    };
    for i in 1..=steps {
        let left = grid[i - 1];
        let right = grid.get(i + 1).copied().unwrap_or(f64::NEG_INFINITY);
        if grid[i] < left || grid[i] < right || grid[i] < best_grid - 0.05 {
            continue;
        }
        let a = (i as f64 - 1.0) * dt;
        let b = ((i as f64 + 1.0) * dt).min(t_max);
        let t = golden_max(&f, a, b);
        let fid = f(t);
        if fid > best.fidelity + 1e-9 {
            best = TransferPeak {
                t0: t,
                fidelity: fid.min(1.0),
            };
        }
    }
    best
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pst_schemes() {
        assert_eq!(pst_couplings(1).unwrap().couplings(), &[1.0]);
        let r2 = 2f64.sqrt();
        assert_eq!(pst_couplings(2).unwrap().couplings(), &[r2, r2]);
        let r6 = 6f64.sqrt();
        assert_eq!(pst_couplings(4).unwrap().couplings(), &[2.0, r6, r6, 2.0]);
        assert!(pst_couplings(0).is_err());
    }

    #[test]
    fn single_coupling_is_pauli_x() {
        let h = chain_hamiltonian(&pst_couplings(1).unwrap());
        assert_eq!(h.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(h.get(1, 0), C64::new(1.0, 0.0));
        assert_eq!(h.get(0, 0), C64::new(0.0, 0.0));
        assert!((transfer_fidelity(&pst_couplings(1).unwrap(), std::f64::consts::FRAC_PI_2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn peak_of_two_site_chain_is_at_quarter_period() {
        let p = locate_transfer_time(&pst_couplings(1).unwrap());
        assert!((p.t0 - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
        assert!(p.fidelity > 1.0 - 1e-12);
    }
}
