use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::{render, Exponents};
use crate::algebra::{solve, GaussianRational as GR, SparseMatrix, SparseVec};
use crate::{Error, Result};

/// `W_C = span(e_1..e_N, f_1..f_N)` with `⟨e_i, f_j⟩ = δ_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticSpace {
    pub n_pairs: usize,
}

impl SymplecticSpace {
    pub fn new(n_pairs: usize) -> Self {
        SymplecticSpace { n_pairs }
    }

    pub fn dim(&self) -> usize {
        2 * self.n_pairs
    }

    /// Gram matrix in the basis `(e_1..e_N, f_1..f_N)`.
    pub fn gram(&self) -> SparseMatrix {
        let n = self.n_pairs;
        let mut j = SparseMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            j.set(i, n + i, GR::one());
            j.set(n + i, i, -GR::one());
        }
        j
    }

    /// `Tᵀ·J + J·T = 0`.
    pub fn is_symplectic_algebra(&self, t: &SparseMatrix) -> Result<bool> {
        if t.rows != self.dim() || t.cols != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: t.rows });
        }
        let j = self.gram();
        let lhs = t.transpose().mul(&j)?;
        let rhs = j.mul(t)?;
        Ok(lhs.entries().all(|(r, c, v)| (v + &rhs.get(r, c)).is_zero())
            && rhs.entries().all(|(r, c, v)| (v + &lhs.get(r, c)).is_zero()))
    }
}

/// Normal-ordered monomial `x^α a^β` of the Weyl algebra on `N` pairs.
///
/// Stored as one exponent vector of length `2N` (creations first), so the
/// graded-lex order of [`Exponents`] is the monomial order.
pub type Monomial = Exponents;

/// Element of the quantum algebra in normal order, with `x_i = e_i` and
/// `a_i = i·f_i`, so that `[a_i, x_j] = δ_ij`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<Monomial, GR>,
}

fn factorial(k: u32) -> u64 {
    (1..=u64::from(k)).product()
}

fn binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..u64::from(k)).fold(1, |acc, j| acc * (u64::from(n) - j) / (j + 1))
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: GR) -> Self {
        let mut w = Self::zero(n);
        w.add_term(Exponents::zero(2 * n), c);
        w
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, GR::one())
    }

    pub fn monomial(n: usize, x: &[u32], a: &[u32], c: GR) -> Self {
        assert!(x.len() == n && a.len() == n, "exponent length");
        let mut w = Self::zero(n);
        w.add_term(Exponents(x.iter().chain(a).copied().collect()), c);
        w
    }

    /// Creation symbol `x_i = e_i` (0-based index).
    pub fn x(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.add_term(Exponents::unit(2 * n, i), GR::one());
        w
    }

    /// Annihilation symbol `a_i = i·f_i`, acting as `∂/∂x_i`.
    pub fn a(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.add_term(Exponents::unit(2 * n, n + i), GR::one());
        w
    }

    /// `f_i = −i·a_i`.
    pub fn f(n: usize, i: usize) -> Self {
        Self::a(n, i).scale(&-GR::i())
    }

    /// Image of `w = Σ u_k e_k + v_k f_k`, coordinates in the basis `(e, f)`.
    pub fn from_vector(n: usize, w: &SparseVec) -> Self {
        let mut out = Self::zero(n);
        for (&k, c) in w {
            let b = if k < n { Self::x(n, k) } else { Self::f(n, k - n) };
            out = out.add(&b.scale(c));
        }
        out
    }

    pub fn n_pairs(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GR)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GR {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term.
    pub fn constant(&self) -> GR {
        self.coefficient(&Exponents::zero(2 * self.n))
    }

    /// Filtration degree: the largest total degree of a term (0 for zero).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponents::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: GR) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GR::one()))
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        WeylElement { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SpaceMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                for (m, k) in monomial_product(self.n, m1, m2) {
                    out.add_term(m, &c * &GR::from_int(k as i64));
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }

    /// Conjugation by the Fock involution `x_i ↦ s_i x_i`, `a_i ↦ s_i a_i`.
    pub fn conjugate_by_signs(&self, signs: &[i8]) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let odd = (0..self.n).filter(|&i| signs[i] < 0).map(|i| m.0[i] + m.0[self.n + i]).sum::<u32>() % 2 == 1;
            out.add_term(m.clone(), if odd { -c } else { c.clone() });
        }
        out
    }
}

/// `x^α a^β · x^γ a^δ = Σ_k Π_i k_i!·C(β_i,k_i)·C(γ_i,k_i) · x^{α+γ−k} a^{β+δ−k}`.
fn monomial_product(n: usize, m1: &Monomial, m2: &Monomial) -> Vec<(Monomial, u64)> {
    let mut out = vec![(Vec::with_capacity(2 * n), Vec::with_capacity(n), 1u64)];
    // Build the per-variable choices of k_i, then assemble.
    let mut choices: Vec<Vec<(u32, u64)>> = Vec::with_capacity(n);
    for i in 0..n {
        let (b, c) = (m1.0[n + i], m2.0[i]);
        choices.push((0..=b.min(c)).map(|k| (k, factorial(k) * binom(b, k) * binom(c, k))).collect());
    }
    for (i, opts) in choices.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for (xs, ks, w) in &out {
            for &(k, f) in opts {
                let mut xs = xs.clone();
                xs.push(m1.0[i] + m2.0[i] - k);
                let mut ks = ks.clone();
                ks.push(k);
                next.push((xs, ks, w * f));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(mut xs, ks, w)| {
            for (i, k) in ks.iter().enumerate() {
                xs.push(m1.0[n + i] - k + m2.0[n + i]);
            }
            (Exponents(xs), w)
        })
        .collect()
}

/// The normal-ordered product, as a free function.
pub fn normal_order_product(x: &WeylElement, y: &WeylElement) -> Result<WeylElement> {
    x.mul(y)
}

pub fn bracket(x: &WeylElement, y: &WeylElement) -> Result<WeylElement> {
    x.bracket(y)
}

/// The symmetric quadratic element `ω(T)` with `[ω(T), ω(w)] = ω(T·w)` for
/// every `w ∈ W_C`, found by solving that linear system.
pub fn omega_c(space: SymplecticSpace, t: &SparseMatrix) -> Result<WeylElement> {
    let n = space.n_pairs;
    if !space.is_symplectic_algebra(t)? {
        return Err(Error::NotSymplectic(format!("{}x{} matrix fails TᵀJ + JT = 0", t.rows, t.cols)));
    }
    let unknowns = Exponents::of_degree(2 * n, 2);
    let linear: BTreeMap<Exponents, usize> =
        Exponents::of_degree(2 * n, 1).into_iter().enumerate().map(|(k, e)| (e, k)).collect();
    let basis: Vec<WeylElement> = (0..2 * n).map(|k| WeylElement::from_vector(n, &SparseVec::from([(k, GR::one())]))).collect();
    let block = 2 * n;
    let mut a = SparseMatrix::zeros(2 * n * block, unknowns.len());
    let mut b = SparseVec::new();
    for (wi, w) in basis.iter().enumerate() {
        for (col, m) in unknowns.iter().enumerate() {
            let q = WeylElement { n, terms: BTreeMap::from([(m.clone(), GR::one())]) };
            for (mono, c) in q.bracket(w)?.terms() {
                a.add_to(wi * block + linear[mono], col, c);
            }
        }
        let tw: SparseVec = (0..2 * n).filter_map(|r| Some((r, t.get(r, wi))).filter(|(_, v)| !v.is_zero())).collect();
        for (mono, c) in WeylElement::from_vector(n, &tw).terms() {
            b.insert(wi * block + linear[mono], c.clone());
        }
    }
    let coeffs = solve(&a, &b).ok_or_else(|| Error::NotSymplectic("bracket system has no solution".into()))?;
    if crate::algebra::rref(&a).rank != unknowns.len() {
        return Err(Error::NotSymplectic("quadratic lift is not unique".into()));
    }
    let mut q = WeylElement::zero(n);
    for (col, c) in coeffs {
        q.add_term(unknowns[col].clone(), c);
    }
    // Symmetrize: (x_i a_i + a_i x_i)/2 = x_i a_i + 1/2.
    let half = GR::from_frac(1, 2);
    for i in 0..n {
        let mut e = Exponents::zero(2 * n);
        e.0[i] = 1;
        e.0[n + i] = 1;
        let c = q.coefficient(&e);
        q.add_term(Exponents::zero(2 * n), &c * &half);
    }
    Ok(q)
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, render(&m.0[..self.n], &m.0[self.n..]))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GR {
        GR::from_int(re) + GR::i() * GR::from_int(im)
    }

    #[test]
    fn defining_relation() {
        let (x, f) = (WeylElement::x(1, 0), WeylElement::f(1, 0));
        let expected = x.mul(&f).unwrap().sub(&WeylElement::scalar(1, GR::i()));
        assert_eq!(f.mul(&x).unwrap(), expected);
        // v w − w v = i⟨v, w⟩ with ⟨e, f⟩ = 1.
        assert_eq!(x.bracket(&f).unwrap(), WeylElement::scalar(1, GR::i()));
    }

    #[test]
    fn creations_commute() {
        let x = WeylElement::x(1, 0);
        assert_eq!(x.mul(&x).unwrap(), WeylElement::monomial(1, &[2], &[0], GR::one()));
    }

    #[test]
    fn f_times_x_squared() {
        let x2 = WeylElement::monomial(1, &[2], &[0], GR::one());
        let lhs = WeylElement::f(1, 0).mul(&x2).unwrap();
        let rhs = x2.mul(&WeylElement::f(1, 0)).unwrap().add(&WeylElement::x(1, 0).scale(&gi(0, -2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torus_generator() {
        let t = SparseMatrix::from_dense(vec![vec![gi(1, 0), gi(0, 0)], vec![gi(0, 0), gi(-1, 0)]]);
        let h = omega_c(SymplecticSpace::new(1), &t).unwrap();
        let expected = WeylElement::monomial(1, &[1], &[1], GR::one()).add(&WeylElement::scalar(1, GR::from_frac(1, 2)));
        assert_eq!(h, expected);
    }

    #[test]
    fn zero_lifts_to_zero() {
        assert!(omega_c(SymplecticSpace::new(2), &SparseMatrix::zeros(4, 4)).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_symplectic() {
        let t = SparseMatrix::identity(2);
        assert!(matches!(omega_c(SymplecticSpace::new(1), &t), Err(Error::NotSymplectic(_))));
    }

    #[test]
    fn space_mismatch() {
        assert!(WeylElement::x(1, 0).mul(&WeylElement::x(2, 0)).is_err());
    }
}
