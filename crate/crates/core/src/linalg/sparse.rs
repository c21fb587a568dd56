use nalgebra::DMatrix;

use super::{LinalgError, Result, StateVector, C64, HERMITIAN_TOL};

/// Canonical compressed-row operator.
///
/// Entries are sorted by `(row, col)`, duplicates are summed and exact zeros
/// dropped. With the Hermitian flag set, `(c, r)` holds exactly the conjugate
/// of `(r, c)` for every stored entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
    hermitian: bool,
}

impl SparseOperator {
    /// Canonicalises a triplet list.
    ///
    /// When `hermitian` is set, the summed entries must be conjugate
    /// symmetric within [`HERMITIAN_TOL`] (relative to the entry size); the
    /// stored operator is then symmetrised exactly.
    pub fn from_triplets(
        dim: usize,
        mut triplets: Vec<(usize, usize, C64)>,
        hermitian: bool,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(LinalgError::ZeroDimension);
        }
        if let Some(&(row, col, _)) = triplets.iter().find(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(LinalgError::IndexOutOfRange { row, col, dim });
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(triplets.len());
        for (r, c, a) in triplets {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += a,
                _ => merged.push((r, c, a)),
            }
        }
        merged.retain(|e| e.2 != C64::new(0.0, 0.0));

        if hermitian {
            merged = symmetrise(merged)?;
        }

        let mut row_ptr = vec![0usize; dim + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        let cols = merged.iter().map(|e| e.1).collect();
        let vals = merged.iter().map(|e| e.2).collect();
        Ok(Self {
            dim,
            row_ptr,
            cols,
            vals,
            hermitian,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_triplets(dim, Vec::new(), true).expect("zero operator")
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let triplets = values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, i, C64::new(v, 0.0)))
            .collect();
        Self::from_triplets(values.len(), triplets, true).expect("real diagonal is Hermitian")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    /// Stored entries of one row.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (self.cols[k], self.vals[k]))
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        let mut out = StateVector::zeros(self.dim);
        self.apply_into(v.amplitudes(), out.amplitudes_mut());
        Ok(out)
    }

    /// `y = A x` on raw slices; lengths must equal `dim`.
    pub(crate) fn apply_into(&self, x: &[C64], y: &mut [C64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *yr = acc;
        }
    }

    /// `<v|A|v>` for a Hermitian operator (real part).
    pub fn expectation(&self, v: &StateVector) -> Result<f64> {
        let av = self.apply(v)?;
        Ok(v.inner(&av)?.re)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let triplets = self.entries().chain(other.entries()).collect();
        Self::from_triplets(self.dim, triplets, self.hermitian && other.hermitian)
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.vals.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// Returns `1_left ⊗ self ⊗ 1_right`.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let dim = left * self.dim * right;
        let mut triplets = Vec::with_capacity(left * right * self.nnz());
        for l in 0..left {
            for (r, c, a) in self.entries() {
                for k in 0..right {
                    triplets.push(((l * self.dim + r) * right + k, (l * self.dim + c) * right + k, a));
                }
            }
        }
        Self::from_triplets(dim, triplets, false).map(|mut op| {
            op.hermitian = self.hermitian;
            op
        })
        .expect("embedding preserves index bounds")
    }

    /// Largest deviation from conjugate symmetry over stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries()
            .map(|(r, c, a)| (a - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, a) in self.entries() {
            m[(r, c)] += a;
        }
        m
    }

    /// Gershgorin bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        (0..self.dim)
            .map(|r| self.row(r).map(|(_, a)| a.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

fn symmetrise(entries: Vec<(usize, usize, C64)>) -> Result<Vec<(usize, usize, C64)>> {
    let lookup = |r: usize, c: usize| -> C64 {
        match entries.binary_search_by_key(&(r, c), |e| (e.0, e.1)) {
            Ok(k) => entries[k].2,
            Err(_) => C64::new(0.0, 0.0),
        }
    };
    let mut keys = std::collections::BTreeSet::new();
    for &(r, c, a) in &entries {
        let partner = lookup(c, r).conj();
        let deviation = (a - partner).norm();
        if deviation > HERMITIAN_TOL * a.norm().max(1.0) {
            return Err(LinalgError::NotHermitian { row: r, col: c, deviation });
        }
        keys.insert((r.min(c), r.max(c)));
    }
    let mut out = Vec::with_capacity(2 * keys.len());
    for (r, c) in keys {
        if r == c {
            out.push((r, r, C64::new(lookup(r, r).re, 0.0)));
        } else {
            let v = (lookup(r, c) + lookup(c, r).conj()) * 0.5;
            out.push((r, c, v));
            out.push((c, r, v.conj()));
        }
    }
    out.retain(|e| e.2 != C64::new(0.0, 0.0));
    out.sort_by_key(|&(r, c, _)| (r, c));
    Ok(out)
}

/// Free-function form of [`SparseOperator::apply`].
pub fn apply(op: &SparseOperator, v: &StateVector) -> Result<StateVector> {
    op.apply(v)
}

/// Triplet accumulator for assembling operators term by term.
#[derive(Debug, Clone, Default)]
pub struct OperatorBuilder {
    dim: usize,
    triplets: Vec<(usize, usize, C64)>,
}

impl OperatorBuilder {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            triplets: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn push(&mut self, row: usize, col: usize, value: C64) {
        self.triplets.push((row, col, value));
    }

    /// Adds `value |row><col| + conj(value) |col><row|`.
    pub fn push_hopping(&mut self, row: usize, col: usize, value: C64) {
        if row == col {
            self.triplets.push((row, row, C64::new(2.0 * value.re, 0.0)));
        } else {
            self.triplets.push((row, col, value));
            self.triplets.push((col, row, value.conj()));
        }
    }

    pub fn push_diagonal(&mut self, index: usize, value: f64) {
        self.triplets.push((index, index, C64::new(value, 0.0)));
    }

    pub fn build_hermitian(self) -> Result<SparseOperator> {
        SparseOperator::from_triplets(self.dim, self.triplets, true)
    }

    pub fn build(self) -> Result<SparseOperator> {
        SparseOperator::from_triplets(self.dim, self.triplets, false)
    }
}
