//! Invariants of a realized Lie algebra in its symmetric algebra, pushed into
//! the Weyl algebra by symmetrization.
//!
//! Symmetrization `S(l) → U(l)` is an isomorphism of `ad`-modules, so the
//! invariants of `U_{≤k}(l)` are the symmetrizations of the invariants of
//! `S_{≤k}(l)`; computing them in polynomial coordinates keeps the invariance
//! test independent of the Fock realization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{solve, stacked_kernel, GaussianRational as GR, SparseMatrix, SparseVec};
use crate::fock::{Exponents, Involution, WeylElement};
use crate::pairs::LieGeneratorSet;
use crate::{Error, Result};

/// Largest number of symmetric-algebra monomials an invariant computation accepts.
pub const INVARIANT_GUARD: usize = 6000;

/// A polynomial in the basis of a Lie algebra, i.e. an element of `S(l)`,
/// identified with its symmetrization in `U(l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    pub labels: Vec<String>,
    pub terms: BTreeMap<Exponents, GR>,
}

impl SymPoly {
    pub fn one(labels: &[String]) -> Self {
        SymPoly { labels: labels.to_vec(), terms: BTreeMap::from([(Exponents::zero(labels.len()), GR::one())]) }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponents::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `ω` of the symmetrization, given the images of the basis.
    pub fn omega(&self, n: usize, images: &[WeylElement]) -> Result<WeylElement> {
        let mut out = WeylElement::zero(n);
        for (e, c) in &self.terms {
            out = out.add(&symmetrized(n, e, images)?.scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { self.labels[i].clone() } else { format!("{}^{p}", self.labels[i]) })
                .collect();
            match (word.is_empty(), c == &GR::one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", word.join("*"))?,
                (false, false) => write!(f, "({c})*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Average of the ordered products over all distinct orderings of the word `e`.
fn symmetrized(n: usize, e: &Exponents, images: &[WeylElement]) -> Result<WeylElement> {
    let mut counts = e.0.clone();
    let mut sum = WeylElement::zero(n);
    let mut orderings = 0i64;
    arrangements(&mut counts, &WeylElement::one(n), images, &mut sum, &mut orderings)?;
    Ok(sum.scale(&GR::from_frac(1, orderings)))
}

fn arrangements(
    counts: &mut [u32],
    prefix: &WeylElement,
    images: &[WeylElement],
    sum: &mut WeylElement,
    orderings: &mut i64,
) -> Result<()> {
    if counts.iter().all(|&c| c == 0) {
        *sum = sum.add(prefix);
        *orderings += 1;
        return Ok(());
    }
    for i in 0..counts.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        let next = prefix.mul(&images[i])?;
        arrangements(counts, &next, images, sum, orderings)?;
        counts[i] += 1;
    }
    Ok(())
}

/// Linear coordinates of Weyl elements in the span of a basis.
struct Coordinates<'a> {
    basis: &'a [WeylElement],
    matrix: SparseMatrix,
    rows: BTreeMap<Exponents, usize>,
}

impl<'a> Coordinates<'a> {
    fn new(basis: &'a [WeylElement]) -> Self {
        let mut rows = BTreeMap::new();
        for b in basis {
            for (m, _) in b.terms() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        let mut matrix = SparseMatrix::zeros(rows.len(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            for (m, c) in b.terms() {
                matrix.set(rows[m], j, c.clone());
            }
        }
        Coordinates { basis, matrix, rows }
    }

    fn of(&self, x: &WeylElement) -> Result<Vec<GR>> {
        let mut b = SparseVec::new();
        for (m, c) in x.terms() {
            let r = self.rows.get(m).ok_or_else(|| Error::NotClosed(format!("{x} is outside the algebra")))?;
            b.insert(*r, c.clone());
        }
        let sol = solve(&self.matrix, &b).ok_or_else(|| Error::NotClosed(format!("{x} is outside the algebra")))?;
        Ok((0..self.basis.len()).map(|j| sol.get(&j).cloned().unwrap_or_default()).collect())
    }

    /// Column `i` holds the coordinates of `f(b_i)`.
    fn matrix_of(&self, f: impl Fn(&WeylElement) -> Result<WeylElement>) -> Result<Vec<Vec<GR>>> {
        self.basis.iter().map(|b| self.of(&f(b)?)).collect()
    }
}

type Poly = BTreeMap<Exponents, GR>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = Exponents(ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect());
            let c = out.entry(e).or_default();
            *c += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Basis of `S_{≤k}(l)^{acting, involutions}` for the algebra `l`: the kernel
/// of the derivations `ad y` and of `σ − 1`, in graded-lex order.
pub fn invariant_polynomials(
    l: &LieGeneratorSet,
    acting: &[WeylElement],
    involutions: &[Involution],
    k: u32,
) -> Result<Vec<SymPoly>> {
    let dim = l.dim();
    let monomials: Vec<Exponents> = (0..=k).flat_map(|d| Exponents::of_degree(dim, d)).collect();
    if monomials.len() > INVARIANT_GUARD {
        return Err(Error::GuardExceeded {
            what: "symmetric-algebra monomials",
            size: monomials.len(),
            limit: INVARIANT_GUARD,
        });
    }
    let index: HashMap<&Exponents, usize> = monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let coords = Coordinates::new(&l.generators);
    let cols = monomials.len();
    let mut blocks = Vec::new();
    for y in acting {
        let ad = coords.matrix_of(|b| y.bracket(b))?;
        let mut m = SparseMatrix::zeros(cols, cols);
        for (col, e) in monomials.iter().enumerate() {
            for (i, &p) in e.0.iter().enumerate().filter(|(_, &p)| p > 0) {
                for (j, c) in ad[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let mut f = e.clone();
                    f.0[i] -= 1;
                    f.0[j] += 1;
                    m.add_to(index[&f], col, &(c * &GR::from_int(i64::from(p))));
                }
            }
        }
        blocks.push(m);
    }
    for s in involutions {
        let images: Vec<Poly> = coords
            .matrix_of(|b| Ok(s.conjugate(b)))?
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (Exponents::unit(dim, j), c))
                    .collect()
            })
            .collect();
        let mut m = SparseMatrix::zeros(cols, cols);
        for (col, e) in monomials.iter().enumerate() {
            let mut image = Poly::from([(Exponents::zero(dim), GR::one())]);
            for (i, &p) in e.0.iter().enumerate() {
                for _ in 0..p {
                    image = poly_mul(&image, &images[i]);
                }
            }
            *image.entry(e.clone()).or_default() -= &GR::one();
            for (f, c) in image.into_iter().filter(|(_, c)| !c.is_zero()) {
                m.set(index[&f], col, c);
            }
        }
        blocks.push(m);
    }
    let refs: Vec<&SparseMatrix> = blocks.iter().collect();
    Ok(stacked_kernel(cols, &refs)
        .basis()
        .iter()
        .map(|v| SymPoly {
            labels: l.labels.clone(),
            terms: v.iter().map(|(&i, c)| (monomials[i].clone(), c.clone())).collect(),
        })
        .collect())
}

/// Whether `x` is killed by every `ad y` and fixed by every involution.
pub fn is_invariant(
    l: &LieGeneratorSet,
    x: &SymPoly,
    acting: &[WeylElement],
    involutions: &[Involution],
) -> Result<bool> {
    let basis = invariant_polynomials(l, acting, involutions, x.degree())?;
    let seen: std::collections::BTreeSet<&Exponents> =
        basis.iter().flat_map(|p| p.terms.keys()).chain(x.terms.keys()).collect();
    let monomials: BTreeMap<&Exponents, usize> = seen.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    let vec = |p: &SymPoly| -> SparseVec { p.terms.iter().map(|(e, c)| (monomials[e], c.clone())).collect() };
    let span = crate::algebra::Subspace::span(monomials.len(), basis.iter().map(vec));
    Ok(span.contains(&vec(x)))
}
