use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::Exponents;
use super::space::{operator_matrix_into, FockVector, GradedSlice, Involution};
use super::weyl::WeylElement;
use crate::algebra::{rref, GaussianRational as GR, SparseMatrix, SparseVec, Subspace};
use crate::weights::{FactorLabel, HalfInt, KTypeLabel, Partition};
use crate::{Error, Result};

/// One factor of a compact group acting on Fock space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompactFactor {
    /// `U(rank)`; contributes `rank` torus generators.
    Unitary { rank: usize },
    /// `O(n)`; contributes `n/2` torus generators and names the involution
    /// (index into [`CompactAction::involutions`]) that separates `det`-twists.
    Orthogonal { n: usize, involution: usize },
}

impl CompactFactor {
    pub fn torus_len(&self) -> usize {
        match *self {
            CompactFactor::Unitary { rank } => rank,
            CompactFactor::Orthogonal { n, .. } => n / 2,
        }
    }
}

/// A compact group acting on Fock space by quadratic elements: torus
/// generators (eigenvalues are the weight entries, shifts included), positive
/// root vectors and component involutions.
#[derive(Debug, Clone)]
pub struct CompactAction {
    pub n_vars: usize,
    pub factors: Vec<CompactFactor>,
    pub torus: Vec<WeylElement>,
    pub raising: Vec<WeylElement>,
    pub lowering: Vec<WeylElement>,
    pub involutions: Vec<Involution>,
}

impl CompactAction {
    /// Lie algebra spanned by torus, raising and lowering generators.
    pub fn generators(&self) -> Vec<WeylElement> {
        self.torus.iter().chain(&self.raising).chain(&self.lowering).cloned().collect()
    }

    /// Checks that the generators span a Lie algebra stable under the involutions.
    pub fn check_closure(&self) -> Result<()> {
        let gens = self.generators();
        let span = WeylSpan::new(&gens);
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                let b = g.bracket(h)?;
                if !span.contains(&b) {
                    return Err(Error::NotClosed(format!("[{g}, {h}] = {b} leaves the span")));
                }
            }
            for s in &self.involutions {
                if !span.contains(&s.conjugate(g)) {
                    return Err(Error::NotClosed(format!("involution {:?} moves {g} out of the span", s.signs)));
                }
            }
        }
        Ok(())
    }

    fn torus_is_diagonal(&self) -> bool {
        let n = self.n_vars;
        self.torus.iter().all(|h| h.terms().all(|(m, _)| m.0[..n] == m.0[n..]))
    }
}

/// Span of Weyl elements, in coordinates given by a monomial index.
#[derive(Debug, Clone)]
pub struct WeylSpan {
    index: BTreeMap<Exponents, usize>,
    space: Subspace,
}

fn weyl_coords(index: &mut BTreeMap<Exponents, usize>, x: &WeylElement) -> SparseVec {
    x.terms()
        .map(|(m, c)| {
            let next = index.len();
            (*index.entry(m.clone()).or_insert(next), c.clone())
        })
        .collect()
}

impl WeylSpan {
    pub fn new(gens: &[WeylElement]) -> Self {
        let mut index = BTreeMap::new();
        let vecs: Vec<SparseVec> = gens.iter().map(|g| weyl_coords(&mut index, g)).collect();
        WeylSpan { space: Subspace::span(index.len(), vecs), index }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &WeylElement) -> bool {
        let mut v = SparseVec::new();
        for (m, c) in x.terms() {
            match self.index.get(m) {
                Some(&k) => {
                    v.insert(k, c.clone());
                }
                None => return false,
            }
        }
        self.space.contains(&v)
    }
}

/// Kernel of the stacked `ops` restricted to `span(basis)`, as vectors in the ambient coordinates.
pub fn restricted_kernel(ops: &[SparseMatrix], basis: &[SparseVec], ambient: usize) -> Vec<SparseVec> {
    if basis.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    for op in ops {
        let images: Vec<SparseVec> = basis.iter().map(|b| op.apply(b)).collect();
        let mut by_row: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (j, img) in images.iter().enumerate() {
            for (&r, c) in img {
                by_row.entry(r).or_default().insert(j, c.clone());
            }
        }
        rows.extend(by_row.into_values());
    }
    let kernel = rref(&SparseMatrix::from_rows(basis.len(), &rows)).kernel;
    let combos: Vec<SparseVec> = kernel
        .basis()
        .iter()
        .map(|y| {
            let mut v = SparseVec::new();
            for (&j, c) in y {
                for (&k, b) in &basis[j] {
                    let t = c * b;
                    let e = v.entry(k).or_insert_with(GR::zero);
                    *e += &t;
                }
            }
            v.retain(|_, c| !c.is_zero());
            v
        })
        .collect();
    Subspace::span(ambient, combos).basis().to_vec()
}

/// Extra conditions cutting out an isotypic piece for a commuting group:
/// each `(x, c)` requires `x·v = c·v`, each `(σ, s)` requires `σ·v = s·v`.
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    pub eigen: Vec<(WeylElement, GR)>,
    pub involutions: Vec<(Involution, i64)>,
}

/// A K-type found in one Fock degree.
#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    pub degree: u32,
    pub label: KTypeLabel,
    pub multiplicity: usize,
    pub highest_weight_vectors: Vec<FockVector>,
}

fn to_halfint(c: &GR) -> Result<HalfInt> {
    let twice = c + c;
    if !twice.is_real() || !twice.re.is_integer() {
        return Err(Error::Hypothesis(format!("torus eigenvalue {c} is not a half-integer")));
    }
    let h: i64 = twice.re.to_integer().try_into().map_err(|_| Error::Hypothesis("eigenvalue overflow".into()))?;
    Ok(HalfInt::from_halves(h))
}

/// Decomposes each degree of `slice` under `action`.
pub fn isotypic_decompose(action: &CompactAction, slice: &GradedSlice) -> Result<Vec<IsotypicComponent>> {
    isotypic_decompose_constrained(action, &Constraints::default(), slice)
}

/// As [`isotypic_decompose`], inside the subspace cut out by `constraints`.
pub fn isotypic_decompose_constrained(
    action: &CompactAction,
    constraints: &Constraints,
    slice: &GradedSlice,
) -> Result<Vec<IsotypicComponent>> {
    if action.torus.len() != action.factors.iter().map(CompactFactor::torus_len).sum::<usize>() {
        return Err(Error::Precondition("torus length does not match the factors".into()));
    }
    let mut out = Vec::new();
    for d in slice.d_lo..=slice.d_hi {
        out.extend(decompose_degree(action, constraints, d)?);
    }
    Ok(out)
}

fn weight_spaces(action: &CompactAction, sl: &GradedSlice) -> Result<Vec<(Vec<HalfInt>, Vec<SparseVec>)>> {
    let dim = sl.dim();
    if action.torus_is_diagonal() {
        let mut groups: BTreeMap<Vec<HalfInt>, Vec<SparseVec>> = BTreeMap::new();
        for (k, e) in sl.basis().iter().enumerate() {
            let v = FockVector::monomial(e.clone(), GR::one());
            let w = action
                .torus
                .iter()
                .map(|h| to_halfint(&super::space::act_on_fock(h, &v)?.coefficient(e)))
                .collect::<Result<Vec<_>>>()?;
            groups.entry(w).or_default().push(SparseVec::from([(k, GR::one())]));
        }
        return Ok(groups.into_iter().collect());
    }
    let mut pieces: Vec<(Vec<HalfInt>, Vec<SparseVec>)> =
        vec![(Vec::new(), (0..dim).map(|k| SparseVec::from([(k, GR::one())])).collect())];
    let bound = 2 * (i64::from(sl.d_hi) + sl.n_vars as i64);
    for h in &action.torus {
        let m = operator_matrix_into(h, sl, sl)?;
        let mut next = Vec::new();
        for (w, basis) in pieces {
            let mut found = 0;
            for halves in -bound..=bound {
                let c = GR::from_frac(halves, 2);
                let shifted = m.sub(&diag(dim, &c))?;
                let k = restricted_kernel(&[shifted], &basis, dim);
                if !k.is_empty() {
                    found += k.len();
                    let mut w2 = w.clone();
                    w2.push(HalfInt::from_halves(halves));
                    next.push((w2, k));
                }
            }
            if found != basis.len() {
                return Err(Error::Hypothesis("torus generator is not diagonalizable with half-integer spectrum".into()));
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn diag(dim: usize, c: &GR) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(dim, dim);
    if !c.is_zero() {
        for k in 0..dim {
            m.set(k, k, c.clone());
        }
    }
    m
}

fn is_dominant(factors: &[CompactFactor], w: &[HalfInt]) -> bool {
    let mut at = 0;
    for f in factors {
        let len = f.torus_len();
        let block = &w[at..at + len];
        at += len;
        if block.windows(2).any(|p| p[0] < p[1]) {
            return false;
        }
        // O(n)-types are labelled by so(n) weights with λ_r ≥ 0; for even n
        // the type with λ_r < 0 is the same O(n)-type.
        if matches!(f, CompactFactor::Orthogonal { .. }) && block.last().is_some_and(|&l| l < HalfInt::ZERO) {
            return false;
        }
    }
    true
}

fn decompose_degree(action: &CompactAction, constraints: &Constraints, d: u32) -> Result<Vec<IsotypicComponent>> {
    let sl = GradedSlice::new(action.n_vars, d, d);
    let dim = sl.dim();
    let raising: Vec<SparseMatrix> =
        action.raising.iter().map(|e| operator_matrix_into(e, &sl, &sl)).collect::<Result<_>>()?;
    let mut extra: Vec<SparseMatrix> = Vec::new();
    for (x, c) in &constraints.eigen {
        extra.push(operator_matrix_into(x, &sl, &sl)?.sub(&diag(dim, c))?);
    }
    for (s, sign) in &constraints.involutions {
        extra.push(s.matrix(&sl).sub(&diag(dim, &GR::from_int(*sign)))?);
    }
    let mut out = Vec::new();
    for (w, basis) in weight_spaces(action, &sl)? {
        if !is_dominant(&action.factors, &w) {
            continue;
        }
        let mut ops = raising.clone();
        ops.extend(extra.iter().cloned());
        let hw = restricted_kernel(&ops, &basis, dim);
        if hw.is_empty() {
            continue;
        }
        for (signs, vecs) in split_by_signs(action, &w, &sl, hw)? {
            let label = make_label(&action.factors, &w, &signs)?;
            out.push(IsotypicComponent {
                degree: d,
                label,
                multiplicity: vecs.len(),
                highest_weight_vectors: vecs.iter().map(|v| FockVector::from_coordinates(&sl, v)).collect(),
            });
        }
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

/// Splits a highest-weight space by the involution eigenvalues of the
/// orthogonal factors whose sign is determined.
fn split_by_signs(
    action: &CompactAction,
    w: &[HalfInt],
    sl: &GradedSlice,
    hw: Vec<SparseVec>,
) -> Result<Vec<(Vec<i8>, Vec<SparseVec>)>> {
    let dim = sl.dim();
    let mut pieces = vec![(Vec::new(), hw)];
    let mut at = 0;
    for f in &action.factors {
        let len = f.torus_len();
        let block = &w[at..at + len];
        at += len;
        let CompactFactor::Orthogonal { n, involution } = *f else { continue };
        let determined = n % 2 == 1 || block.last().is_none_or(|&l| l == HalfInt::ZERO);
        let mut next = Vec::new();
        for (signs, vecs) in pieces {
            if !determined {
                let mut s = signs.clone();
                s.push(1);
                next.push((s, vecs));
                continue;
            }
            let sigma = action
                .involutions
                .get(involution)
                .ok_or_else(|| Error::Precondition(format!("missing involution {involution}")))?
                .matrix(sl);
            for sign in [1i8, -1] {
                let op = sigma.sub(&diag(dim, &GR::from_int(i64::from(sign))))?;
                let k = restricted_kernel(&[op], &vecs, dim);
                if !k.is_empty() {
                    let mut s = signs.clone();
                    s.push(sign);
                    next.push((s, k));
                }
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn make_label(factors: &[CompactFactor], w: &[HalfInt], signs: &[i8]) -> Result<KTypeLabel> {
    let mut out = Vec::new();
    let (mut at, mut o) = (0, 0);
    for f in factors {
        let len = f.torus_len();
        let block = &w[at..at + len];
        at += len;
        out.push(match *f {
            CompactFactor::Unitary { .. } => FactorLabel::unitary(block)?,
            CompactFactor::Orthogonal { n, .. } => {
                let parts = block
                    .iter()
                    .map(|h| h.abs().to_int().map(|v| v as u32))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Hypothesis("half-integral so(n) weight".into()))?;
                let s = signs[o];
                o += 1;
                FactorLabel::orthogonal(n, Partition::new(parts)?, s)?
            }
        });
    }
    Ok(KTypeLabel::new(out))
}

/// All normal-ordered monomials of filtration degree ≤ `k` on `n` pairs, in order.
pub fn weyl_basis(n: usize, k: u32) -> Vec<Exponents> {
    (0..=k).flat_map(|d| Exponents::of_degree(2 * n, d)).collect()
}

/// `{z ∈ Ω_{≤k} : [g, z] = 0 ∀g ∈ gens, σ(z) = z ∀σ ∈ involutions}`, in the
/// coordinates of [`weyl_basis`].
pub fn ad_invariants(n: usize, gens: &[WeylElement], involutions: &[Involution], k: u32) -> Result<Subspace> {
    let basis = weyl_basis(n, k);
    let index: BTreeMap<&Exponents, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows: Vec<SparseVec> = Vec::new();
    for g in gens {
        let mut by_row: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (col, m) in basis.iter().enumerate() {
            let z = WeylElement::monomial(n, &m.0[..n], &m.0[n..], GR::one());
            for (mono, c) in g.bracket(&z)?.terms() {
                let r = *index
                    .get(mono)
                    .ok_or_else(|| Error::Precondition(format!("generator {g} raises the filtration degree")))?;
                by_row.entry(r).or_default().insert(col, c.clone());
            }
        }
        rows.extend(by_row.into_values());
    }
    for s in involutions {
        for (col, m) in basis.iter().enumerate() {
            let z = WeylElement::monomial(n, &m.0[..n], &m.0[n..], GR::one());
            if s.conjugate(&z) != z {
                rows.push(SparseVec::from([(col, GR::one())]));
            }
        }
    }
    Ok(rref(&SparseMatrix::from_rows(basis.len(), &rows)).kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> GR {
        GR::from_frac(1, 2)
    }

    fn number(n: usize, i: usize) -> WeylElement {
        WeylElement::x(n, i).mul(&WeylElement::a(n, i)).unwrap().add(&WeylElement::scalar(n, half()))
    }

    fn torus_only(n: usize) -> CompactAction {
        CompactAction {
            n_vars: n,
            factors: vec![CompactFactor::Unitary { rank: 1 }; n],
            torus: (0..n).map(|i| number(n, i)).collect(),
            raising: vec![],
            lowering: vec![],
            involutions: vec![],
        }
    }

    fn h(v: &[i64]) -> Vec<HalfInt> {
        v.iter().map(|&x| HalfInt::from_halves(x)).collect()
    }

    #[test]
    fn one_variable_torus() {
        let comps = isotypic_decompose(&torus_only(1), &GradedSlice::new(1, 0, 3)).unwrap();
        let labels: Vec<String> = comps.iter().map(|c| c.label.to_string()).collect();
        assert_eq!(labels, vec!["1/2", "3/2", "5/2", "7/2"]);
        assert!(comps.iter().all(|c| c.multiplicity == 1));
    }

    #[test]
    fn product_torus_degree_one() {
        let comps = isotypic_decompose(&torus_only(2), &GradedSlice::new(2, 1, 1)).unwrap();
        let mut labels: Vec<KTypeLabel> = comps.iter().map(|c| c.label.clone()).collect();
        labels.sort();
        let a = KTypeLabel::unitary(&[h(&[3]), h(&[1])]).unwrap();
        let b = KTypeLabel::unitary(&[h(&[1]), h(&[3])]).unwrap();
        let mut expected = vec![a, b];
        expected.sort();
        assert_eq!(labels, expected);
    }

    #[test]
    fn empty_slice_gives_nothing() {
        let mut action = torus_only(1);
        action.factors.clear();
        action.torus.clear();
        let comps = isotypic_decompose(&action, &GradedSlice::new(1, 1, 0)).unwrap();
        assert!(comps.is_empty());
    }

    #[test]
    fn orthogonal_two_splits_degree_zero_by_sign() {
        // O(2) on x1, x2: so(2) generator −i(x1∂2 − x2∂1), reflection x2 ↦ −x2.
        let n = 2;
        let rot = WeylElement::x(n, 0)
            .mul(&WeylElement::a(n, 1))
            .unwrap()
            .sub(&WeylElement::x(n, 1).mul(&WeylElement::a(n, 0)).unwrap())
            .scale(&-GR::i());
        let action = CompactAction {
            n_vars: n,
            factors: vec![CompactFactor::Orthogonal { n: 2, involution: 0 }],
            torus: vec![rot],
            raising: vec![],
            lowering: vec![],
            involutions: vec![Involution::flipping(2, [1])],
        };
        action.check_closure().unwrap();
        let comps = isotypic_decompose(&action, &GradedSlice::new(2, 0, 2)).unwrap();
        let labels: Vec<String> = comps.iter().map(|c| format!("{}:{}", c.degree, c.label)).collect();
        // Degree 2: x1²+x2² is invariant; the 2-dimensional type has weight 2.
        assert_eq!(labels, vec!["0:O2()+", "1:O2(1)+", "2:O2()+", "2:O2(2)+"]);
    }

    #[test]
    fn invariants_of_the_sign_involution() {
        let inv = ad_invariants(1, &[], &[Involution::flipping(1, [0])], 2).unwrap();
        assert_eq!(inv.dim(), 4);
        assert_eq!(ad_invariants(1, &[], &[], 2).unwrap().dim(), 6);
    }

    #[test]
    fn center_of_the_weyl_algebra_is_scalars() {
        let n = 1;
        let gens = vec![
            WeylElement::monomial(n, &[2], &[0], GR::one()),
            WeylElement::monomial(n, &[0], &[2], GR::one()),
            number(n, 0),
        ];
        assert_eq!(ad_invariants(n, &gens, &[], 0).unwrap().dim(), 1);
    }
}
