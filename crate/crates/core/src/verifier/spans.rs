use std::collections::HashMap;

use serde::Serialize;

use super::invariants::{invariant_polynomials, is_invariant, SymPoly};
use super::SliceSpec;
use crate::algebra::{solve, SparseMatrix, SparseVec, SpanRelation, Subspace};
use crate::fock::{ad_invariants, operator_matrix_into, weyl_basis, Exponents, GradedSlice, WeylElement};
use crate::pairs::{BuiltPair, LieGeneratorSet, SeesawConfig};
use crate::report::{Check, Verdict};
use crate::spectra::ORACLE_GUARD;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanVerdict {
    Equal,
    LhsInRhs,
    RhsInLhs,
    Incomparable,
}

impl From<SpanRelation> for SpanVerdict {
    fn from(r: SpanRelation) -> Self {
        match r {
            SpanRelation::Equal => SpanVerdict::Equal,
            SpanRelation::ASubsetB => SpanVerdict::LhsInRhs,
            SpanRelation::BSubsetA => SpanVerdict::RhsInLhs,
            SpanRelation::Incomparable => SpanVerdict::Incomparable,
        }
    }
}

/// Comparison of two operator spans at fixed truncation.
#[derive(Debug, Clone, Serialize)]
pub struct SpanCheckReport {
    pub kind: &'static str,
    pub config: serde_json::Value,
    pub k: u32,
    pub k_prime: u32,
    pub slice: Option<SliceSpec>,
    pub relation: SpanVerdict,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// Elements of one side missing from the other, as Weyl elements.
    pub lhs_outside_rhs: Vec<String>,
    pub rhs_outside_lhs: Vec<String>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

fn guarded(what: &'static str, size: usize) -> Result<()> {
    if size > ORACLE_GUARD {
        return Err(Error::GuardExceeded { what, size, limit: ORACLE_GUARD });
    }
    Ok(())
}

/// Up to four items whose vectors fall outside `b`.
fn outside<T: Clone>(b: &Subspace, items: &[(SparseVec, T)]) -> Vec<T> {
    items.iter().filter(|(v, _)| !b.contains(v)).map(|(_, t)| t.clone()).take(4).collect()
}

fn weyl_from_coordinates(n: usize, basis: &[Exponents], v: &SparseVec) -> WeylElement {
    let mut out = WeylElement::zero(n);
    for (&i, c) in v {
        let m = &basis[i];
        out = out.add(&WeylElement::monomial(n, &m.0[..n], &m.0[n..], c.clone()));
    }
    out
}

fn weyl_coordinates(x: &WeylElement, index: &HashMap<&Exponents, usize>) -> Result<SparseVec> {
    x.terms()
        .map(|(m, c)| {
            let i = index.get(m).ok_or_else(|| Error::Precondition(format!("{x} exceeds the filtration bound")))?;
            Ok((*i, c.clone()))
        })
        .collect()
}

/// All monomials of `S_{≤k}(l)`, i.e. the symmetrized PBW words.
fn all_words(l: &LieGeneratorSet, k: u32) -> Vec<SymPoly> {
    (0..=k)
        .flat_map(|d| Exponents::of_degree(l.dim(), d))
        .map(|e| SymPoly { labels: l.labels.clone(), terms: [(e, crate::algebra::GaussianRational::one())].into() })
        .collect()
}

/// `ω(U_{≤k}(g))` against the `G′`-invariants of `Ω_{≤2k}`, both as
/// subspaces of `Ω_{≤2k}` in normal-ordered monomial coordinates.
pub fn verify_howe_image(pair: &BuiltPair, k: u32) -> Result<SpanCheckReport> {
    let n = pair.n_vars();
    let basis = weyl_basis(n, 2 * k);
    guarded("Weyl monomials", basis.len())?;
    let words: usize = (0..=k).map(|d| Exponents::count(pair.g.dim(), d) as usize).sum();
    guarded("PBW words", words)?;
    let index: HashMap<&Exponents, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut images = Vec::new();
    for w in all_words(&pair.g, k) {
        let x = w.omega(n, &pair.g.generators)?;
        images.push((weyl_coordinates(&x, &index)?, x.to_string()));
    }
    let lhs = Subspace::span(basis.len(), images.iter().map(|(v, _)| v.clone()));
    let rhs = ad_invariants(n, &pair.g_prime.generators, &pair.g_prime.group_meta.involutions, 2 * k)?;
    let rhs_items: Vec<(SparseVec, String)> =
        rhs.basis().iter().map(|v| (v.clone(), weyl_from_coordinates(n, &basis, v).to_string())).collect();
    let relation: SpanVerdict = lhs.relate(&rhs)?.into();
    let equal = relation == SpanVerdict::Equal;
    let checks = vec![Check::new(
        "image equals the invariants",
        equal,
        format!("dim {} vs {} in a space of dim {}", lhs.dim(), rhs.dim(), basis.len()),
    )];
    Ok(SpanCheckReport {
        kind: "howe_image",
        config: serde_json::json!({ "pair": pair.descriptor.to_string() }),
        k,
        k_prime: 2 * k,
        slice: None,
        relation,
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        lhs_outside_rhs: outside(&rhs, &images),
        rhs_outside_lhs: outside(&lhs, &rhs_items),
        checks,
        verdict: if equal { Verdict::Match } else { Verdict::Mismatch },
    })
}

/// The two invariant algebras of a see-saw: `U(g)^H` and `U(h′)^{G′}`.
pub(crate) struct SeesawInvariants<'a> {
    pub saw: &'a SeesawConfig,
}

impl SeesawInvariants<'_> {
    pub fn g_side(&self, k: u32) -> Result<Vec<SymPoly>> {
        let (outer, inner) = (&self.saw.outer, &self.saw.inner);
        invariant_polynomials(&outer.g, &inner.g.generators, &inner.g.group_meta.involutions, k)
    }

    pub fn h_prime_side(&self, k: u32) -> Result<Vec<SymPoly>> {
        let (outer, inner) = (&self.saw.outer, &self.saw.inner);
        invariant_polynomials(&inner.g_prime, &outer.g_prime.generators, &outer.g_prime.group_meta.involutions, k)
    }

    pub fn check_g_invariant(&self, x: &SymPoly) -> Result<()> {
        let (outer, inner) = (&self.saw.outer, &self.saw.inner);
        if x.labels != outer.g.labels {
            return Err(Error::Precondition(format!("{x} is not written in the generators of {}", outer.g.algebra)));
        }
        if !is_invariant(&outer.g, x, &inner.g.generators, &inner.g.group_meta.involutions)? {
            return Err(Error::Precondition(format!("{x} is not invariant under {}", inner.g.algebra)));
        }
        Ok(())
    }
}

/// Flattened operator matrix of `x` from `slice` into `out`.
fn flat(x: &WeylElement, slice: &GradedSlice, out: &GradedSlice) -> Result<SparseVec> {
    Ok(operator_matrix_into(x, slice, out)?.flatten())
}

/// Compares `A_k = ω(U_k(g)^H)` with `B_{k′} = ω(U_{k′}(h′)^{G′})` as
/// operators on a Fock slice, and checks containment with one step of
/// filtration slack in both directions: `A_k ⊆ B_{k+1}` and `B_{k′} ⊆ A_{k′+1}`.
pub fn verify_ugk_spans(saw: &SeesawConfig, k: u32, k_prime: u32, slice: SliceSpec) -> Result<SpanCheckReport> {
    let inv = SeesawInvariants { saw };
    let n = saw.outer.n_vars();
    let top_a = k.max(k_prime + 1);
    let top_b = k_prime.max(k + 1);
    let sl = slice.build(n)?;
    let out = sl.widened(2 * top_a.max(top_b));
    guarded("Fock monomials", out.dim())?;
    let ambient = out.dim() * sl.dim();
    let push = |polys: Vec<SymPoly>, images: &[WeylElement]| -> Result<Vec<(u32, SparseVec, String)>> {
        polys
            .into_iter()
            .map(|p| {
                let x = p.omega(n, images)?;
                Ok((p.degree(), flat(&x, &sl, &out)?, p.to_string()))
            })
            .collect()
    };
    let a_all = push(inv.g_side(top_a)?, &saw.outer.g.generators)?;
    let b_all = push(inv.h_prime_side(top_b)?, &saw.inner.g_prime.generators)?;
    let upto = |all: &[(u32, SparseVec, String)], d: u32| -> Vec<(SparseVec, String)> {
        all.iter().filter(|(deg, _, _)| *deg <= d).map(|(_, v, s)| (v.clone(), s.clone())).collect()
    };
    let span = |items: &[(SparseVec, String)]| Subspace::span(ambient, items.iter().map(|(v, _)| v.clone()));
    let (a_k, b_kp) = (upto(&a_all, k), upto(&b_all, k_prime));
    let (a, b) = (span(&a_k), span(&b_kp));
    let b_next = span(&upto(&b_all, k + 1));
    let a_next = span(&upto(&a_all, k_prime + 1));
    let relation: SpanVerdict = a.relate(&b)?.into();
    let forward = a.is_subspace_of(&b_next);
    let backward = b.is_subspace_of(&a_next);
    let checks = vec![
        Check::new(
            format!("A_{k} inside B_{}", k + 1),
            forward,
            format!("dim A_{k} = {}, dim B_{} = {}", a.dim(), k + 1, b_next.dim()),
        ),
        Check::new(
            format!("B_{k_prime} inside A_{}", k_prime + 1),
            backward,
            format!("dim B_{k_prime} = {}, dim A_{} = {}", b.dim(), k_prime + 1, a_next.dim()),
        ),
    ];
    Ok(SpanCheckReport {
        kind: "ugk_spans",
        config: serde_json::json!({
            "outer": saw.outer.descriptor.to_string(),
            "inner": saw.inner.descriptor.to_string(),
        }),
        k,
        k_prime,
        slice: Some(slice),
        relation,
        lhs_dim: a.dim(),
        rhs_dim: b.dim(),
        lhs_outside_rhs: outside(&b, &a_k),
        rhs_outside_lhs: outside(&a, &b_kp),
        verdict: if forward && backward { Verdict::Match } else { Verdict::Mismatch },
        checks,
    })
}

/// `y ∈ U(h′)^{G′}` with `ω(x) = ω(y)` on a slice, checked again on a wider one.
#[derive(Debug, Clone, Serialize)]
pub struct XiWitness {
    pub input: SymPoly,
    pub output: SymPoly,
    pub slice: SliceSpec,
    pub check_slice: SliceSpec,
    /// `ω(x) − ω(y)` vanishes on the solving slice.
    pub residual_zero: bool,
    /// `ω(x) − ω(y)` vanishes on the wider slice.
    pub out_of_sample: bool,
    /// `ω(x) = ω(y)` holds in the Weyl algebra itself.
    pub exact: bool,
}

/// Finds `Ξ(x)` among the `G′`-invariants of `U_{≤k′}(h′)`, taking the
/// solution supported on the earliest basis elements in graded-lex order.
pub fn xi_witness(saw: &SeesawConfig, x: &SymPoly, k_prime: u32, slice: SliceSpec) -> Result<XiWitness> {
    let inv = SeesawInvariants { saw };
    inv.check_g_invariant(x)?;
    let n = saw.outer.n_vars();
    let wx = x.omega(n, &saw.outer.g.generators)?;
    let candidates = inv.h_prime_side(k_prime)?;
    let images: Vec<WeylElement> =
        candidates.iter().map(|p| p.omega(n, &saw.inner.g_prime.generators)).collect::<Result<_>>()?;
    let top = images.iter().map(WeylElement::degree).chain([wx.degree()]).max().unwrap_or(0);
    let sl = slice.build(n)?;
    let out = sl.widened(top);
    guarded("Fock monomials", out.dim())?;
    let cols: Vec<SparseVec> = images.iter().map(|y| flat(y, &sl, &out)).collect::<Result<_>>()?;
    let mut a = SparseMatrix::zeros(out.dim() * sl.dim(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (&i, v) in c {
            a.set(i, j, v.clone());
        }
    }
    let sol = solve(&a, &flat(&wx, &sl, &out)?).ok_or(Error::NoWitness(k_prime as usize))?;
    let mut output = SymPoly { labels: saw.inner.g_prime.labels.clone(), terms: Default::default() };
    let mut wy = WeylElement::zero(n);
    for (&j, c) in &sol {
        for (e, d) in &candidates[j].terms {
            let t = output.terms.entry(e.clone()).or_default();
            *t += &(c * d);
        }
        wy = wy.add(&images[j].scale(c));
    }
    output.terms.retain(|_, c| !c.is_zero());
    let diff = wx.sub(&wy);
    let check_slice = SliceSpec { d_lo: slice.d_lo, d_hi: slice.d_hi + 2 };
    let wide = check_slice.build(n)?;
    let wide_out = wide.widened(diff.degree());
    guarded("Fock monomials", wide_out.dim())?;
    Ok(XiWitness {
        input: x.clone(),
        output,
        slice,
        check_slice,
        residual_zero: flat(&diff, &sl, &out)?.is_empty(),
        out_of_sample: flat(&diff, &wide, &wide_out)?.is_empty(),
        exact: diff.is_zero(),
    })
}
