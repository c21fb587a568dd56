use super::{build_rl_terms, LatticeConfig, LatticeError, LatticeProgram, MoveTerm, Result, EMPTY};
use crate::linalg::{OperatorBuilder, SparseOperator, C64};
use crate::transfer::CouplingScheme;
use std::collections::{HashMap, VecDeque};

/// Configurations reachable from the initial labels, in BFS order.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitBasis {
    rows: usize,
    cols: usize,
    labels: Vec<Vec<u8>>,
    depth: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
}

impl OrbitBasis {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &[u8] {
        &self.labels[i]
    }

    /// BFS distance from the initial labels.
    pub fn depth_of(&self, i: usize) -> usize {
        self.depth[i]
    }

    /// Largest BFS distance (number of moves to the far frontier).
    pub fn depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn index_of(&self, label: &[u8]) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Number of configurations at each depth.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.depth() + 1];
        for &d in &self.depth {
            sizes[d] += 1;
        }
        sizes
    }

    /// Every depth holds exactly one configuration.
    pub fn is_path(&self) -> bool {
        self.layer_sizes().iter().all(|&n| n == 1)
    }

    /// All configurations at a given depth share one occupancy pattern, so
    /// the depth acts as a clock and each move layer is unitary on the work
    /// values.
    pub fn is_clocked(&self) -> bool {
        let mut masks: Vec<Option<Vec<bool>>> = vec![None; self.depth() + 1];
        for (label, &d) in self.labels.iter().zip(&self.depth) {
            let mask: Vec<bool> = label.iter().map(|&v| v != EMPTY).collect();
            match &masks[d] {
                None => masks[d] = Some(mask),
                Some(m) if *m == mask => {}
                Some(_) => return false,
            }
        }
        true
    }

    pub fn active_count(&self, i: usize) -> usize {
        self.labels[i].iter().filter(|&&v| v != EMPTY).count()
    }
}

/// Breadth-first closure of `init` under every term and its adjoint.
pub fn orbit_from_labels(
    rows: usize,
    cols: usize,
    init: Vec<Vec<u8>>,
    terms: &[MoveTerm],
    cap: usize,
) -> Result<OrbitBasis> {
    let mut basis = OrbitBasis {
        rows,
        cols,
        labels: Vec::new(),
        depth: Vec::new(),
        index: HashMap::new(),
    };
    let mut queue = VecDeque::new();
    for label in init {
        if label.len() != rows * cols {
            return Err(LatticeError::Shape("label length does not match the lattice".into()));
        }
        if label.iter().all(|&v| v == EMPTY) {
            return Err(LatticeError::NoActiveRegion);
        }
        if basis.index.contains_key(&label) {
            continue;
        }
        basis.index.insert(label.clone(), basis.labels.len());
        basis.labels.push(label);
        basis.depth.push(0);
        queue.push_back(basis.labels.len() - 1);
    }
    while let Some(i) = queue.pop_front() {
        let label = basis.labels[i].clone();
        let d = basis.depth[i];
        for t in terms {
            let images = t
                .apply_forward(&label, cols)
                .into_iter()
                .chain(t.apply_backward(&label, cols));
            for (next, _) in images {
                if basis.index.contains_key(&next) {
                    continue;
                }
                if basis.labels.len() >= cap {
                    return Err(LatticeError::OrbitCap { cap });
                }
                basis.index.insert(next.clone(), basis.labels.len());
                basis.labels.push(next);
                basis.depth.push(d + 1);
                queue.push_back(basis.labels.len() - 1);
            }
        }
    }
    Ok(basis)
}

/// Orbit of a single initial configuration under the program's terms.
pub fn orbit_subspace(init: &LatticeConfig, p: &LatticeProgram, cap: usize) -> Result<OrbitBasis> {
    if init.rows() != p.rows || init.cols() != p.cols {
        return Err(LatticeError::Shape(format!(
            "config is {}x{} but the program is {}x{}",
            init.rows(),
            init.cols(),
            p.rows,
            p.cols
        )));
    }
    if init.active_count() == 0 {
        return Err(LatticeError::NoActiveRegion);
    }
    let terms = build_rl_terms(p)?;
    orbit_from_labels(p.rows, p.cols, vec![init.sites().to_vec()], &terms, cap)
}

/// `H = Σ_terms J_{depth} (R + R†)` on the orbit, where each move is
/// weighted by the coupling at the depth of its source configuration.
pub fn lattice_hamiltonian(
    basis: &OrbitBasis,
    p: &LatticeProgram,
    s: &CouplingScheme,
) -> Result<SparseOperator> {
    if s.len() != basis.depth() {
        return Err(LatticeError::DepthMismatch {
            depth: basis.depth(),
            scheme: s.len(),
        });
    }
    let terms = build_rl_terms(p)?;
    let mut b = OperatorBuilder::new(basis.len());
    for (j, label) in basis.labels.iter().enumerate() {
        for t in &terms {
            for (next, a) in t.apply_forward(label, basis.cols) {
                let i = basis.index_of(&next).ok_or_else(|| {
                    LatticeError::InvalidProgram("orbit is not closed under the terms".into())
                })?;
                let d = basis.depth[j].min(basis.depth[i]);
                b.push_hopping(i, j, a * C64::new(s[d], 0.0));
            }
        }
    }
    Ok(b.build_hermitian()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_walker_is_a_path() {
        let init = LatticeConfig::from_rows(&["202", "222", "222", "222"]).unwrap();
        let p = LatticeProgram::identity(4, 3, 1..2).unwrap();
        let o = orbit_subspace(&init, &p, 100).unwrap();
        assert_eq!(o.len(), 4);
        assert_eq!(o.depth(), 3);
        assert!((0..4).all(|i| o.depth_of(i) == i));
    }

    #[test]
    fn all_empty_lattice_is_an_error() {
        let init = LatticeConfig::from_rows(&["22", "22"]).unwrap();
        let p = LatticeProgram::identity(2, 2, 0..2).unwrap();
        assert_eq!(orbit_subspace(&init, &p, 10), Err(LatticeError::NoActiveRegion));
    }

    #[test]
    fn cap_is_enforced() {
        let init = LatticeConfig::from_rows(&["01", "22", "22", "22"]).unwrap();
        let p = LatticeProgram::identity(4, 2, 0..2).unwrap();
        assert_eq!(orbit_subspace(&init, &p, 3), Err(LatticeError::OrbitCap { cap: 3 }));
        assert_eq!(orbit_subspace(&init, &p, 7).unwrap().len(), 7);
    }
}
