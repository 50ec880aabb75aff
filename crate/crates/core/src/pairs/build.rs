use std::collections::BTreeMap;

use super::descriptor::{DualPairDescriptor, RealGroup};
use crate::algebra::{GaussianRational as GR, SparseMatrix, SparseVec};
use crate::fock::{
    act_on_fock, restricted_kernel, weyl_basis, CompactAction, CompactFactor, Exponents, FockVector, Involution,
    SymplecticSpace, WeylElement, WeylSpan,
};
use crate::weights::HalfInt;
use crate::{Error, Result};

/// Generators of a complexified Lie algebra acting on Fock space, with the
/// data of its maximal compact subgroup.
#[derive(Debug, Clone)]
pub struct LieGeneratorSet {
    pub algebra: String,
    pub generators: Vec<WeylElement>,
    pub labels: Vec<String>,
    pub group_meta: CompactAction,
}

impl LieGeneratorSet {
    /// Validates independence, the expected dimension and bracket closure.
    pub fn new(
        algebra: String,
        generators: Vec<WeylElement>,
        labels: Vec<String>,
        group_meta: CompactAction,
        expected_dim: usize,
    ) -> Result<Self> {
        if generators.len() != labels.len() {
            return Err(Error::DimensionMismatch { expected: generators.len(), got: labels.len() });
        }
        let span = WeylSpan::new(&generators);
        if span.dim() != expected_dim || generators.len() != expected_dim {
            return Err(Error::DimensionMismatch { expected: expected_dim, got: span.dim() });
        }
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !span.contains(&g.bracket(h)?) {
                    return Err(Error::NotClosed(format!("[{}, {}] in {algebra}", labels[i], labels[j])));
                }
            }
        }
        group_meta.check_closure()?;
        if let Some(k) = group_meta.generators().iter().find(|k| !span.contains(k)) {
            return Err(Error::NotClosed(format!("compact generator {k} is not in {algebra}")));
        }
        Ok(LieGeneratorSet { algebra, generators, labels, group_meta })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn span(&self) -> WeylSpan {
        WeylSpan::new(&self.generators)
    }

    /// Torus eigenvalues on the vacuum: the central shifts of the cover.
    pub fn vacuum_weight(&self) -> Result<Vec<HalfInt>> {
        let n = self.group_meta.n_vars;
        let vac = FockVector::vacuum(n);
        self.group_meta
            .torus
            .iter()
            .map(|h| {
                let c = act_on_fock(h, &vac)?.coefficient(&Exponents::zero(n));
                let twice = &c + &c;
                match twice.re.to_integer().try_into() {
                    Ok(h) if twice.is_real() && twice.re.is_integer() => Ok(HalfInt::from_halves(h)),
                    _ => Err(Error::Hypothesis(format!("vacuum eigenvalue {c} is not a half-integer"))),
                }
            })
            .collect()
    }
}

/// A dual pair realized on `n_vars` Fock variables.
#[derive(Debug, Clone)]
pub struct BuiltPair {
    pub descriptor: DualPairDescriptor,
    pub space: SymplecticSpace,
    pub g: LieGeneratorSet,
    pub g_prime: LieGeneratorSet,
}

impl BuiltPair {
    pub fn n_vars(&self) -> usize {
        self.space.n_pairs
    }
}

/// Outer pair `(G, G′)` and inner pair `(H, H′)` with `H < G`, `G′ < H′`.
#[derive(Debug, Clone)]
pub struct SeesawConfig {
    pub outer: BuiltPair,
    pub inner: BuiltPair,
}

fn mono(n: usize, xs: &[usize], as_: &[usize], c: GR) -> WeylElement {
    let mut x = vec![0u32; n];
    let mut a = vec![0u32; n];
    for &i in xs {
        x[i] += 1;
    }
    for &i in as_ {
        a[i] += 1;
    }
    WeylElement::monomial(n, &x, &a, c)
}

fn xa(n: usize, i: usize, j: usize) -> WeylElement {
    mono(n, &[i], &[j], GR::one())
}

fn xx(n: usize, i: usize, j: usize) -> WeylElement {
    mono(n, &[i, j], &[], GR::one())
}

fn aa(n: usize, i: usize, j: usize) -> WeylElement {
    mono(n, &[], &[i, j], GR::one())
}

fn sum(n: usize, terms: impl IntoIterator<Item = WeylElement>) -> WeylElement {
    terms.into_iter().fold(WeylElement::zero(n), |acc, t| acc.add(&t))
}

fn half(k: i64) -> GR {
    GR::from_frac(k, 2)
}

/// Simultaneous `ad`-eigenvectors of `torus` inside `span(gens)`, with their
/// integer weights. Zero-weight vectors are included.
pub fn root_vectors(n: usize, torus: &[WeylElement], gens: &[WeylElement]) -> Result<Vec<(Vec<i64>, WeylElement)>> {
    let top = gens.iter().map(WeylElement::degree).max().unwrap_or(0);
    let basis = weyl_basis(n, top);
    let index: BTreeMap<&Exponents, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let dim = basis.len();
    let coords = |x: &WeylElement| -> Result<SparseVec> {
        x.terms()
            .map(|(m, c)| {
                index
                    .get(m)
                    .map(|&k| (k, c.clone()))
                    .ok_or_else(|| Error::NotClosed(format!("{x} leaves filtration degree {top}")))
            })
            .collect()
    };
    let span: Vec<SparseVec> = gens.iter().map(&coords).collect::<Result<_>>()?;
    let mut pieces: Vec<(Vec<i64>, Vec<SparseVec>)> = vec![(Vec::new(), span)];
    for h in torus {
        let mut ad = SparseMatrix::zeros(dim, dim);
        for (col, e) in basis.iter().enumerate() {
            let m = WeylElement::monomial(n, &e.0[..n], &e.0[n..], GR::one());
            for (row, c) in coords(&h.bracket(&m)?)? {
                ad.set(row, col, c);
            }
        }
        let mut next = Vec::new();
        for (w, vecs) in pieces {
            let before = restricted_kernel(&[SparseMatrix::zeros(1, dim)], &vecs, dim).len();
            let mut found = 0;
            for c in -4i64..=4 {
                let mut shifted = ad.clone();
                for k in 0..dim {
                    shifted.add_to(k, k, &GR::from_int(-c));
                }
                let k = restricted_kernel(&[shifted], &vecs, dim);
                if !k.is_empty() {
                    found += k.len();
                    let mut w2 = w.clone();
                    w2.push(c);
                    next.push((w2, k));
                }
            }
            if found != before {
                return Err(Error::Hypothesis("torus does not act semisimply with integer roots".into()));
            }
        }
        pieces = next;
    }
    let basis = &basis;
    Ok(pieces
        .into_iter()
        .flat_map(|(w, vecs)| {
            vecs.into_iter().map(move |v| {
                let mut el = WeylElement::zero(n);
                for (k, c) in v {
                    let e = &basis[k];
                    el = el.add(&WeylElement::monomial(n, &e.0[..n], &e.0[n..], c));
                }
                (w.clone(), el)
            })
        })
        .collect())
}

/// Compact action whose raising operators are the lexicographically positive
/// root vectors of `compact` under `torus`.
fn compact_action(
    n: usize,
    factors: Vec<CompactFactor>,
    torus: Vec<WeylElement>,
    compact: &[WeylElement],
    involutions: Vec<Involution>,
) -> Result<CompactAction> {
    let mut raising = Vec::new();
    let mut lowering = Vec::new();
    for (w, v) in root_vectors(n, &torus, compact)? {
        match w.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => raising.push(v),
            Some(_) => lowering.push(v),
            None => {}
        }
    }
    Ok(CompactAction { n_vars: n, factors, torus, raising, lowering, involutions })
}

/// `(Sp(2n,R), O(p,q))` on `x` (n×p) and `y` (n×q), row-major.
fn realize_sp_o(n: usize, p: usize, q: usize) -> Result<(LieGeneratorSet, LieGeneratorSet)> {
    let w = p + q;
    let nv = n * w;
    let x = |i: usize, a: usize| i * w + a;
    let y = |i: usize, b: usize| i * w + p + b;
    let shift = half(p as i64 - q as i64);

    let e = |i: usize, j: usize| {
        let mut t = sum(nv, (0..p).map(|a| xa(nv, x(i, a), x(j, a))))
            .sub(&sum(nv, (0..q).map(|b| xa(nv, y(j, b), y(i, b)))));
        if i == j {
            t = t.add(&WeylElement::scalar(nv, shift.clone()));
        }
        t
    };
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    let mut compact = Vec::new();
    for i in 0..n {
        for j in 0..n {
            gens.push(e(i, j));
            labels.push(format!("E{}{}", i + 1, j + 1));
            compact.push(e(i, j));
        }
    }
    for i in 0..n {
        for j in i..n {
            gens.push(sum(nv, (0..p).map(|a| xx(nv, x(i, a), x(j, a)))).add(&sum(nv, (0..q).map(|b| aa(nv, y(i, b), y(j, b))))));
            labels.push(format!("P{}{}", i + 1, j + 1));
            gens.push(sum(nv, (0..p).map(|a| aa(nv, x(i, a), x(j, a)))).add(&sum(nv, (0..q).map(|b| xx(nv, y(i, b), y(j, b))))));
            labels.push(format!("Q{}{}", i + 1, j + 1));
        }
    }
    let torus = (0..n).map(|i| e(i, i)).collect();
    let meta = compact_action(nv, vec![CompactFactor::Unitary { rank: n }], torus, &compact, Vec::new())?;
    let g = LieGeneratorSet::new(format!("sp({},C)", 2 * n), gens, labels, meta, RealGroup::Sp { n }.lie_dim())?;

    // so(p+q): rotations inside each block and mixed boosts.
    let rot = |v: &dyn Fn(usize, usize) -> usize, a: usize, b: usize| {
        sum(nv, (0..n).map(|i| xa(nv, v(i, a), v(i, b)).sub(&xa(nv, v(i, b), v(i, a)))))
    };
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    let mut compact = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            gens.push(rot(&x, a, b));
            labels.push(format!("A{}{}", a + 1, b + 1));
            compact.push(rot(&x, a, b));
        }
    }
    for a in 0..q {
        for b in a + 1..q {
            gens.push(rot(&y, a, b));
            labels.push(format!("B{}{}", a + 1, b + 1));
            compact.push(rot(&y, a, b));
        }
    }
    for a in 0..p {
        for b in 0..q {
            gens.push(sum(nv, (0..n).map(|i| xx(nv, x(i, a), y(i, b)).add(&aa(nv, x(i, a), y(i, b))))));
            labels.push(format!("C{}{}", a + 1, b + 1));
        }
    }
    let mut factors = Vec::new();
    let mut torus = Vec::new();
    let mut involutions = Vec::new();
    for (size, v) in [(p, &x as &dyn Fn(usize, usize) -> usize), (q, &y)] {
        if size == 0 {
            continue;
        }
        factors.push(CompactFactor::Orthogonal { n: size, involution: involutions.len() });
        involutions.push(Involution::flipping(nv, (0..n).map(|i| v(i, size - 1))));
        for k in 0..size / 2 {
            torus.push(rot(v, 2 * k, 2 * k + 1).scale(&-GR::i()));
        }
    }
    let meta = compact_action(nv, factors, torus, &compact, involutions)?;
    let g_prime = LieGeneratorSet::new(format!("so({},C)", w), gens, labels, meta, RealGroup::O { p, q }.lie_dim())?;
    Ok((g, g_prime))
}

/// `(U(a,b), U(k))` on `x` (a×k) and `y` (b×k), row-major, `y` dual.
fn realize_u_u(a: usize, b: usize, k: usize) -> Result<(LieGeneratorSet, LieGeneratorSet)> {
    let nv = (a + b) * k;
    let var = |i: usize, al: usize| i * k + al;
    let e = |i: usize, j: usize| -> WeylElement {
        let t = match (i < a, j < a) {
            (true, true) => sum(nv, (0..k).map(|al| xa(nv, var(i, al), var(j, al)))),
            (false, false) => sum(nv, (0..k).map(|al| xa(nv, var(j, al), var(i, al)))).scale(&-GR::one()),
            (true, false) => sum(nv, (0..k).map(|al| xx(nv, var(i, al), var(j, al)))),
            (false, true) => sum(nv, (0..k).map(|al| aa(nv, var(i, al), var(j, al)))).scale(&-GR::one()),
        };
        if i != j {
            t
        } else if i < a {
            t.add(&WeylElement::scalar(nv, half(k as i64)))
        } else {
            t.add(&WeylElement::scalar(nv, half(-(k as i64))))
        }
    };
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    let mut compact = Vec::new();
    for i in 0..a + b {
        for j in 0..a + b {
            gens.push(e(i, j));
            labels.push(format!("E{}{}", i + 1, j + 1));
            if (i < a) == (j < a) {
                compact.push(e(i, j));
            }
        }
    }
    let factors = [a, b].into_iter().filter(|&r| r > 0).map(|rank| CompactFactor::Unitary { rank }).collect();
    let torus = (0..a + b).map(|i| e(i, i)).collect();
    let meta = compact_action(nv, factors, torus, &compact, Vec::new())?;
    let g = LieGeneratorSet::new(format!("gl({},C)", a + b), gens, labels, meta, RealGroup::U { p: a, q: b }.lie_dim())?;

    let f = |al: usize, be: usize| -> WeylElement {
        let mut t = sum(nv, (0..a).map(|i| xa(nv, var(i, al), var(i, be))))
            .sub(&sum(nv, (a..a + b).map(|j| xa(nv, var(j, be), var(j, al)))));
        if al == be {
            t = t.add(&WeylElement::scalar(nv, half(a as i64 - b as i64)));
        }
        t
    };
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for al in 0..k {
        for be in 0..k {
            gens.push(f(al, be));
            labels.push(format!("F{}{}", al + 1, be + 1));
        }
    }
    let torus = (0..k).map(|al| f(al, al)).collect();
    let meta = compact_action(nv, vec![CompactFactor::Unitary { rank: k }], torus, &gens, Vec::new())?;
    let g_prime = LieGeneratorSet::new(format!("gl({k},C)"), gens, labels, meta, RealGroup::U { p: k, q: 0 }.lie_dim())?;
    Ok((g, g_prime))
}

/// Realizes `d` on Fock space and checks that the two members commute.
pub fn build_pair(d: &DualPairDescriptor) -> Result<BuiltPair> {
    use RealGroup::*;
    let (g, g_prime) = match (d.groups[0], d.groups[1]) {
        (Sp { n }, O { p, q }) => realize_sp_o(n, p, q)?,
        (O { p, q }, Sp { n }) => {
            let (s, o) = realize_sp_o(n, p, q)?;
            (o, s)
        }
        (U { p, q }, U { p: k, q: 0 }) => realize_u_u(p, q, k)?,
        (U { p: k, q: 0 }, U { p, q }) => {
            let (big, small) = realize_u_u(p, q, k)?;
            (small, big)
        }
        _ => return Err(Error::Unsupported(format!("no Fock realization for {d}"))),
    };
    let pair = BuiltPair { descriptor: *d, space: SymplecticSpace::new(d.fock_vars()), g, g_prime };
    check_commute(&pair.g, &pair.g_prime)?;
    check_commute(&pair.g_prime, &pair.g)?;
    Ok(pair)
}

/// `[a, b] = 0` for all generators, and the involutions of `b` fix `a`.
fn check_commute(a: &LieGeneratorSet, b: &LieGeneratorSet) -> Result<()> {
    for (x, lx) in a.generators.iter().zip(&a.labels) {
        for (y, ly) in b.generators.iter().zip(&b.labels) {
            if !x.bracket(y)?.is_zero() {
                return Err(Error::Hypothesis(format!("{}:{lx} and {}:{ly} do not commute", a.algebra, b.algebra)));
            }
        }
        for s in &b.group_meta.involutions {
            if &s.conjugate(x) != x {
                return Err(Error::Hypothesis(format!("involution {:?} moves {}:{lx}", s.signs, a.algebra)));
            }
        }
    }
    Ok(())
}

/// Validates `H < G` and `G′ < H′` by exact span membership.
pub fn build_seesaw(outer: &DualPairDescriptor, inner: &DualPairDescriptor) -> Result<SeesawConfig> {
    if outer.fock_vars() != inner.fock_vars() {
        return Err(Error::DimensionMismatch { expected: outer.fock_vars(), got: inner.fock_vars() });
    }
    let outer = build_pair(outer)?;
    let inner = build_pair(inner)?;
    let contained = |small: &LieGeneratorSet, big: &LieGeneratorSet| -> Result<()> {
        let span = big.span();
        for (x, l) in small.generators.iter().zip(&small.labels) {
            if !span.contains(x) {
                return Err(Error::Hypothesis(format!("{}:{l} = {x} is not in {}", small.algebra, big.algebra)));
            }
        }
        Ok(())
    };
    contained(&inner.g, &outer.g)?;
    contained(&outer.g_prime, &inner.g_prime)?;
    check_commute(&inner.g, &outer.g_prime)?;
    Ok(SeesawConfig { outer, inner })
}
