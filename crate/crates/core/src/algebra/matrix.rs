use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::GaussianRational;
use crate::{Error, Result};

/// Sparse coordinate vector; absent coordinates are zero, stored ones never are.
pub type SparseVec = BTreeMap<usize, GaussianRational>;

fn axpy(y: &mut SparseVec, a: &GaussianRational, x: &SparseVec) {
    for (&k, v) in x {
        let t = a * v;
        match y.get_mut(&k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    y.remove(&k);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(k, t);
                }
            }
        }
    }
}

fn scale(x: &mut SparseVec, a: &GaussianRational) {
    for v in x.values_mut() {
        *v *= a;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), GaussianRational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, GaussianRational::one());
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &GaussianRational) {
        let cur = self.get(i, j);
        self.set(i, j, &cur + v);
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn row_vecs(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let rrows = rhs.row_vecs();
        let mut out = Self::zeros(self.rows, rhs.cols);
        let mut acc = vec![SparseVec::new(); self.rows];
        for (&(i, k), v) in &self.entries {
            axpy(&mut acc[i], v, &rrows[k]);
        }
        for (i, row) in acc.into_iter().enumerate() {
            for (j, v) in row {
                out.entries.insert((i, j), v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: rhs.rows * rhs.cols });
        }
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, &-v);
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(i, j), a) in &self.entries {
            if let Some(x) = v.get(&j) {
                let t = a * x;
                let e = out.entry(i).or_insert_with(GaussianRational::zero);
                *e += &t;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Row-major flattening into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVec {
        self.entries.iter().map(|(&(i, j), v)| (i * self.cols + j, v.clone())).collect()
    }
}

/// Incremental reduced row-echelon builder.
#[derive(Debug, Clone)]
struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Self { dim, rows: BTreeMap::new() }
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // Pivots only eliminate their own column; later pivots are never
        // reintroduced because stored rows are fully reduced.
        let cols: Vec<usize> = v.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for c in cols {
            if let Some(coef) = v.get(&c).cloned() {
                axpy(&mut v, &-coef, &self.rows[&c]);
            }
        }
        v
    }

    /// Returns true if `v` enlarged the span.
    fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        scale(&mut v, &inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    fn into_subspace(self) -> Subspace {
        Subspace { ambient_dim: self.dim, basis: self.rows.into_values().collect() }
    }
}

/// A subspace stored by its canonical reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient_dim: usize,
    basis: Vec<SparseVec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanRelation {
    Equal,
    ASubsetB,
    BSubsetA,
    Incomparable,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, (0..ambient_dim).map(|k| SparseVec::from([(k, GaussianRational::one())])))
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vectors: I) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            debug_assert!(v.keys().all(|&k| k < ambient_dim));
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| *v.keys().next().expect("nonzero basis row")).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            let p = *v.keys().next().expect("nonzero basis row");
            e.rows.insert(p, v.clone());
        }
        e
    }

    /// Residual of `v` after elimination against the basis (zero iff `v` is in the span).
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.echelon().reduce(v.clone())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residual(v).is_empty()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_dim(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(v.clone());
        }
        Ok(e.into_subspace())
    }

    fn check_dim(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        Ok(())
    }

    pub fn relate(&self, other: &Subspace) -> Result<SpanRelation> {
        self.check_dim(other)?;
        if self == other {
            return Ok(SpanRelation::Equal);
        }
        let a_in_b = self.is_subspace_of(other);
        let b_in_a = other.is_subspace_of(self);
        Ok(match (a_in_b, b_in_a) {
            (true, true) => unreachable!("canonical bases of equal spans coincide"),
            (true, false) => SpanRelation::ASubsetB,
            (false, true) => SpanRelation::BSubsetA,
            (false, false) => SpanRelation::Incomparable,
        })
    }

    /// Coordinates of `v` in terms of the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<GaussianRational>> {
        if !self.contains(v) {
            return None;
        }
        // In reduced echelon form the coefficient of basis row k is v[pivot_k].
        Some(self.pivots().iter().map(|p| v.get(p).cloned().unwrap_or_default()).collect())
    }
}

#[derive(Debug, Clone)]
pub struct Rref {
    pub rank: usize,
    pub row_space: Subspace,
    pub kernel: Subspace,
}

/// Reduced row-echelon form of `m` together with its row space and kernel.
pub fn rref(m: &SparseMatrix) -> Rref {
    let row_space = Subspace::span(m.cols, m.row_vecs().into_iter().filter(|r| !r.is_empty()));
    let pivots = row_space.pivots();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut kernel_vecs = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = SparseVec::from([(free, GaussianRational::one())]);
        for (row, &p) in row_space.basis().iter().zip(&pivots) {
            if let Some(c) = row.get(&free) {
                v.insert(p, -c);
            }
        }
        kernel_vecs.push(v);
    }
    Rref { rank: row_space.dim(), kernel: Subspace::span(m.cols, kernel_vecs), row_space }
}

/// A solution of `a·c = b`, if one exists.
pub fn solve(a: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let n = a.cols;
    let mut aug = SparseMatrix::zeros(a.rows, n + 1);
    for (i, j, v) in a.entries() {
        aug.set(i, j, v.clone());
    }
    for (&i, v) in b {
        aug.set(i, n, -v);
    }
    // Kernel vectors with last coordinate 1 are exactly the solutions.
    let k = rref(&aug).kernel;
    let v = k.basis().iter().find(|v| v.contains_key(&n))?;
    let inv = v[&n].inv().expect("nonzero");
    Some(v.iter().filter(|(&j, _)| j < n).map(|(&j, x)| (j, x * &inv)).collect())
}

/// Kernel of the vertical stack of `blocks`, all with `cols` columns.
pub fn stacked_kernel(cols: usize, blocks: &[&SparseMatrix]) -> Subspace {
    let rows: Vec<SparseVec> = blocks.iter().flat_map(|b| b.row_vecs()).filter(|r| !r.is_empty()).collect();
    rref(&SparseMatrix::from_rows(cols, &rows)).kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_int(re) + GaussianRational::i() * GaussianRational::from_int(im)
    }

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, GaussianRational::from_int(x))).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let r = rref(&SparseMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.kernel.dim(), 0);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let r = rref(&SparseMatrix::zeros(2, 4));
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.dim(), 4);
    }

    #[test]
    fn gaussian_rank_one_example() {
        // [[1, i], [i, -1]]: second row is i times the first.
        let m = SparseMatrix::from_dense(vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(-1, 0)]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.dim(), 1);
        // x + i·y = 0, so the kernel is spanned by (−i, 1).
        let expected = Subspace::span(2, [SparseVec::from([(0, g(0, -1)), (1, g(1, 0))])]);
        assert_eq!(r.kernel, expected);
    }

    #[test]
    fn solves_consistent_systems() {
        let m = SparseMatrix::from_dense(vec![vec![g(1, 0), g(1, 0)], vec![g(0, 0), g(2, 0)]]);
        let b = v(&[(0, 3), (1, 4)]);
        let c = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&c), b);
        let singular = SparseMatrix::from_dense(vec![vec![g(1, 0), g(1, 0)], vec![g(1, 0), g(1, 0)]]);
        assert!(solve(&singular, &v(&[(0, 1), (1, 2)])).is_none());
    }

    #[test]
    fn span_relations() {
        let e1 = Subspace::span(2, [v(&[(0, 1)])]);
        let both = Subspace::span(2, [v(&[(0, 1)]), v(&[(1, 1)])]);
        let two_e1 = Subspace::span(2, [v(&[(0, 2)])]);
        let e2 = Subspace::span(2, [v(&[(1, 1)])]);
        assert_eq!(e1.relate(&both).unwrap(), SpanRelation::ASubsetB);
        assert_eq!(both.relate(&e1).unwrap(), SpanRelation::BSubsetA);
        assert_eq!(e1.relate(&two_e1).unwrap(), SpanRelation::Equal);
        assert_eq!(e1.relate(&e2).unwrap(), SpanRelation::Incomparable);
    }

    #[test]
    fn relate_rejects_dimension_mismatch() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(a.relate(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn coordinates_recover_combination() {
        let s = Subspace::span(3, [v(&[(0, 1), (2, 1)]), v(&[(1, 1), (2, 2)])]);
        let w = v(&[(0, 3), (1, -1), (2, 1)]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(c, vec![g(3, 0), g(-1, 0)]);
        assert!(s.coordinates(&v(&[(2, 1)])).is_none());
    }
}
