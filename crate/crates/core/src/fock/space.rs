use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::{render, Exponents};
use super::weyl::WeylElement;
use crate::algebra::{GaussianRational as GR, SparseMatrix, SparseVec};
use crate::{Error, Result};

/// Polynomial in `x_1..x_N`.
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    n: usize,
    terms: BTreeMap<Exponents, GR>,
}

impl FockVector {
    pub fn zero(n: usize) -> Self {
        FockVector { n, terms: BTreeMap::new() }
    }

    pub fn vacuum(n: usize) -> Self {
        Self::monomial(Exponents::zero(n), GR::one())
    }

    pub fn monomial(e: Exponents, c: GR) -> Self {
        let mut v = Self::zero(e.len());
        v.add_term(e, c);
        v
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GR)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &Exponents) -> GR {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exponents, c: GR) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GR) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Coordinates in `slice`; `None` if a term falls outside it.
    pub fn coordinates(&self, slice: &GradedSlice) -> Option<SparseVec> {
        self.terms.iter().map(|(e, c)| slice.index_of(e).map(|k| (k, c.clone()))).collect()
    }

    pub fn from_coordinates(slice: &GradedSlice, v: &SparseVec) -> Self {
        let mut out = Self::zero(slice.n_vars);
        for (&k, c) in v {
            out.add_term(slice.basis[k].clone(), c.clone());
        }
        out
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", render(&e.0, &[]))?;
        }
        Ok(())
    }
}

/// `x^α a^β` applied to `x^γ`: `Π γ_i!/(γ_i−β_i)! · x^{γ−β+α}`, or zero.
fn act_monomial(n: usize, m: &Exponents, g: &Exponents) -> Option<(Exponents, u64)> {
    let mut out = Vec::with_capacity(n);
    let mut coeff = 1u64;
    for i in 0..n {
        let (alpha, beta, gamma) = (m.0[i], m.0[n + i], g.0[i]);
        if beta > gamma {
            return None;
        }
        coeff *= ((gamma - beta + 1)..=gamma).map(u64::from).product::<u64>();
        out.push(gamma - beta + alpha);
    }
    Some((Exponents(out), coeff))
}

/// Action of the Weyl algebra on polynomials: `x_i` multiplies, `a_i` differentiates.
pub fn act_on_fock(x: &WeylElement, v: &FockVector) -> Result<FockVector> {
    let n = x.n_pairs();
    if n != v.n {
        return Err(Error::SpaceMismatch(n, v.n));
    }
    let mut out = FockVector::zero(n);
    for (m, c) in x.terms() {
        for (g, d) in &v.terms {
            if let Some((e, k)) = act_monomial(n, m, g) {
                out.add_term(e, &(c * d) * &GR::from_int(k as i64));
            }
        }
    }
    Ok(out)
}

/// Monomials of Fock degrees `d_lo..=d_hi`, in graded-lex order.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSlice {
    pub n_vars: usize,
    pub d_lo: u32,
    pub d_hi: u32,
    basis: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl GradedSlice {
    pub fn new(n_vars: usize, d_lo: u32, d_hi: u32) -> Self {
        let basis: Vec<Exponents> = (d_lo..=d_hi).flat_map(|d| Exponents::of_degree(n_vars, d)).collect();
        let index = basis.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        GradedSlice { n_vars, d_lo, d_hi, basis, index }
    }

    /// Size of `new(n_vars, d_lo, d_hi)` without building it.
    pub fn size(n_vars: usize, d_lo: u32, d_hi: u32) -> u128 {
        (d_lo..=d_hi).map(|d| Exponents::count(n_vars, d)).sum()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponents] {
        &self.basis
    }

    pub fn index_of(&self, e: &Exponents) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The slice reached from this one by an element of filtration degree `deg`.
    pub fn widened(&self, deg: u32) -> GradedSlice {
        GradedSlice::new(self.n_vars, self.d_lo.saturating_sub(deg), self.d_hi + deg)
    }
}

impl fmt::Debug for GradedSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSlice(N={}, {}..={}, dim {})", self.n_vars, self.d_lo, self.d_hi, self.basis.len())
    }
}

/// Matrix of `x` from `slice_in` into `slice_in.widened(deg x)`.
pub fn operator_matrix(x: &WeylElement, slice_in: &GradedSlice) -> Result<SparseMatrix> {
    operator_matrix_into(x, slice_in, &slice_in.widened(x.degree()))
}

/// Matrix of `x` from `slice_in` into `slice_out`; fails if the image leaves `slice_out`.
pub fn operator_matrix_into(x: &WeylElement, slice_in: &GradedSlice, slice_out: &GradedSlice) -> Result<SparseMatrix> {
    let n = x.n_pairs();
    if n != slice_in.n_vars || n != slice_out.n_vars {
        return Err(Error::SpaceMismatch(n, slice_in.n_vars));
    }
    let mut m = SparseMatrix::zeros(slice_out.dim(), slice_in.dim());
    for (col, g) in slice_in.basis.iter().enumerate() {
        for (mono, c) in x.terms() {
            if let Some((e, k)) = act_monomial(n, mono, g) {
                let row = slice_out
                    .index_of(&e)
                    .ok_or_else(|| Error::NotClosed(format!("image of {g:?} leaves the target slice")))?;
                m.add_to(row, col, &(c * &GR::from_int(k as i64)));
            }
        }
    }
    Ok(m)
}

/// Sign change `x_i ↦ s_i·x_i` on Fock space, representing a component of a
/// disconnected compact group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Involution {
    pub signs: Vec<i8>,
}

impl Involution {
    pub fn flipping(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut signs = vec![1; n];
        for v in vars {
            signs[v] = -1;
        }
        Involution { signs }
    }

    /// Eigenvalue on the monomial `x^e`.
    pub fn sign_of(&self, e: &Exponents) -> i64 {
        let odd: u32 = e.0.iter().zip(&self.signs).filter(|(_, &s)| s < 0).map(|(k, _)| *k).sum();
        if odd.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero(v.n);
        for (e, c) in &v.terms {
            out.add_term(e.clone(), c * &GR::from_int(self.sign_of(e)));
        }
        out
    }

    pub fn conjugate(&self, x: &WeylElement) -> WeylElement {
        x.conjugate_by_signs(&self.signs)
    }

    /// Diagonal matrix on `slice`.
    pub fn matrix(&self, slice: &GradedSlice) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(slice.dim(), slice.dim());
        for (k, e) in slice.basis.iter().enumerate() {
            m.set(k, k, GR::from_int(self.sign_of(e)));
        }
        m
    }
}

/// Matrix dump in a matrix-market style text format:
/// a `%%theta-matrix rows cols nnz` header, then one `row col re im` line per
/// entry with 0-based indices and exact fraction strings.
pub fn dump_text(m: &SparseMatrix) -> String {
    let mut s = format!("%%theta-matrix {} {} {}\n", m.rows, m.cols, m.nnz());
    for (r, c, v) in m.entries() {
        let re = GR::from_rational(v.re.clone()).to_exact_string();
        let im = GR::from_rational(v.im.clone()).to_exact_string();
        s.push_str(&format!("{r} {c} {re} {im}\n"));
    }
    s
}

/// JSON form of [`dump_text`], with the slice basis when given.
pub fn dump_json(m: &SparseMatrix, slice: Option<&GradedSlice>) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = m
        .entries()
        .map(|(r, c, v)| {
            serde_json::json!([
                r,
                c,
                GR::from_rational(v.re.clone()).to_exact_string(),
                GR::from_rational(v.im.clone()).to_exact_string()
            ])
        })
        .collect();
    let mut out = serde_json::json!({ "rows": m.rows, "cols": m.cols, "entries": entries });
    if let Some(s) = slice {
        out["basis"] = serde_json::json!(s.basis.iter().map(|e| e.0.clone()).collect::<Vec<_>>());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xk(k: u32) -> FockVector {
        FockVector::monomial(Exponents(vec![k]), GR::one())
    }

    #[test]
    fn creation_and_annihilation() {
        assert_eq!(act_on_fock(&WeylElement::x(1, 0), &FockVector::vacuum(1)).unwrap(), xk(1));
        assert_eq!(act_on_fock(&WeylElement::a(1, 0), &xk(1)).unwrap(), FockVector::vacuum(1));
        assert_eq!(act_on_fock(&WeylElement::a(1, 0), &xk(3)).unwrap(), xk(2).scale(&GR::from_int(3)));
    }

    #[test]
    fn number_operator_is_diagonal() {
        let num = WeylElement::monomial(1, &[1], &[1], GR::one());
        let slice = GradedSlice::new(1, 0, 3);
        let m = operator_matrix_into(&num, &slice, &slice).unwrap();
        let expected = SparseMatrix::from_dense(
            (0..4).map(|i| (0..4).map(|j| GR::from_int(if i == j { i } else { 0 })).collect()).collect(),
        );
        assert_eq!(m, expected);
    }

    #[test]
    fn identity_acts_as_identity() {
        let slice = GradedSlice::new(2, 0, 2);
        let m = operator_matrix(&WeylElement::one(2), &slice).unwrap();
        assert_eq!(m, SparseMatrix::identity(slice.dim()));
    }

    #[test]
    fn torus_eigenvalue_is_shifted_by_one_half() {
        let h = WeylElement::monomial(1, &[1], &[1], GR::one()).add(&WeylElement::scalar(1, GR::from_frac(1, 2)));
        for k in 0..5 {
            assert_eq!(act_on_fock(&h, &xk(k)).unwrap(), xk(k).scale(&GR::from_frac(2 * k as i64 + 1, 2)));
        }
    }

    #[test]
    fn leaving_the_target_is_an_error() {
        let slice = GradedSlice::new(1, 0, 2);
        assert!(operator_matrix_into(&WeylElement::x(1, 0), &slice, &slice).is_err());
    }

    #[test]
    fn dumps_are_exact() {
        let mut m = SparseMatrix::zeros(2, 2);
        m.set(0, 1, GR::from_frac(1, 2) + GR::i());
        assert_eq!(dump_text(&m), "%%theta-matrix 2 2 1\n0 1 1/2 1\n");
        assert_eq!(dump_json(&m, None)["entries"][0][2], "1/2");
    }
}
