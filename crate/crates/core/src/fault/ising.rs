use super::{FaultError, Result};
use crate::lattice::{OrbitBasis, EMPTY};
use crate::linalg::SparseOperator;

/// `edges − Σ_<ij> |22><22|_ij` on an open `rows × cols` grid: the number
/// of nearest-neighbour pairs with at least one non-`|2>` site.
pub fn ising_energy(rows: usize, cols: usize, label: &[u8]) -> usize {
    assert_eq!(label.len(), rows * cols, "label does not match the grid");
    let active = |r: usize, c: usize| label[r * cols + c] != EMPTY;
    let mut e = 0;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols && (active(r, c) || active(r, c + 1)) {
                e += 1;
            }
            if r + 1 < rows && (active(r, c) || active(r + 1, c)) {
                e += 1;
            }
        }
    }
    e
}

/// `op + strength · (edges − Σ |22><22|)` on the orbit basis of `op`.
pub fn add_ising_penalty(op: &SparseOperator, basis: &OrbitBasis, strength: f64) -> Result<SparseOperator> {
    if op.dim() != basis.len() {
        return Err(FaultError::Geometry {
            op: op.dim(),
            basis: basis.len(),
        });
    }
    let diag: Vec<f64> = basis
        .labels()
        .iter()
        .map(|l| strength * ising_energy(basis.rows(), basis.cols(), l) as f64)
        .collect();
    Ok(op.add(&SparseOperator::diagonal(&diag))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> (usize, usize, Vec<u8>) {
        let cols = rows[0].len();
        let label = rows.iter().flat_map(|r| r.bytes().map(|b| b - b'0')).collect();
        (rows.len(), cols, label)
    }

    #[test]
    fn boundary_counts() {
        let (r, c, l) = grid(&["222", "222", "222"]);
        assert_eq!(ising_energy(r, c, &l), 0);
        let (r, c, l) = grid(&["222", "202", "222"]);
        assert_eq!(ising_energy(r, c, &l), 4);
        // six boundary edges plus the bond inside the domain
        let (r, c, l) = grid(&["2222", "2012", "2222"]);
        assert_eq!(ising_energy(r, c, &l), 7);
    }
}
