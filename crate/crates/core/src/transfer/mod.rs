//! K-spectra of the transfer functors `Γ^j` through the decomposition
//! `Γ^j V = ⊕_W Γ_W V`, and end-to-end checks of the transfer theorems.
//!
//! Everything here is computed in the coordinates of `h`: a factor of
//! `K₂` is `U(a+b) ⊃ U(a) × U(b)`, the `U(b)` block carrying the weights of
//! the dual rows exactly as the `u(r,s)` realization produces them.

mod theorems;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use theorems::{
    euler_sum_check, verify_theorem_e1, verify_theorem_ex2, TransferConfig, E1_EXAMPLE_CUTOFF,
};

use crate::weights::{
    branch_gl_to_glgl, gl_tensor, partitions_within, rho, CharacterSeries, FactorLabel, GLWeight, HalfInt,
    InfinitesimalCharacter, KTypeLabel,
};
use crate::{Error, Result};

type Weight = Vec<HalfInt>;
type Blocks = Vec<Weight>;

/// One factor `U(a+b) ⊃ U(a) × U(b)` of `K₂ ⊃ M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitFactor {
    pub a: usize,
    pub b: usize,
}

impl SplitFactor {
    pub fn rank(&self) -> usize {
        self.a + self.b
    }

    fn pieces(&self) -> Vec<usize> {
        [self.a, self.b].into_iter().filter(|&k| k > 0).collect()
    }

    fn is_split(&self) -> bool {
        self.a > 0 && self.b > 0
    }
}

/// `K₂ = ∏ U(a_f+b_f)` and `M = ∏ U(a_f) × U(b_f)`, zero-size pieces dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferGeometry {
    pub factors: Vec<SplitFactor>,
}

impl TransferGeometry {
    pub fn new(factors: Vec<SplitFactor>) -> Self {
        TransferGeometry { factors }
    }

    /// `dim h/m = Σ 2ab`.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| 2 * f.a * f.b).sum()
    }

    fn m_pieces(&self) -> usize {
        self.factors.iter().map(|f| f.pieces().len()).sum()
    }
}

/// An irreducible `M`-summand `W` of `∧^j(h/m)`; `index` numbers repeated copies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MTypeLabel {
    pub label: KTypeLabel,
    pub j: usize,
    pub index: u64,
}

fn split(w: &[HalfInt]) -> Result<(GLWeight, HalfInt)> {
    match FactorLabel::unitary(w)? {
        FactorLabel::Unitary { weight, shift } => Ok((weight, shift)),
        FactorLabel::Orthogonal { .. } => unreachable!("unitary constructor"),
    }
}

fn join(w: &GLWeight, shift: HalfInt) -> Weight {
    w.entries().iter().map(|&e| HalfInt::from_int(e) + shift).collect()
}

fn ints(w: &[i64]) -> Weight {
    w.iter().map(|&e| HalfInt::from_int(e)).collect()
}

/// Tensor product of two `U(k)`-types given by full half-integral weights.
fn tensor(a: &[HalfInt], b: &[HalfInt]) -> Result<Vec<(Weight, u64)>> {
    if a.is_empty() {
        return Ok(vec![(Vec::new(), 1)]);
    }
    let ((wa, sa), (wb, sb)) = (split(a)?, split(b)?);
    Ok(gl_tensor(&wa, &wb)?.into_iter().map(|(w, c)| (join(&w, sa + sb), c)).collect())
}

/// Restriction of a `U(a+b)`-type to the `M`-pieces of `f`.
fn branch(g: &[HalfInt], f: SplitFactor) -> Result<Vec<(Blocks, u64)>> {
    if !f.is_split() {
        return Ok(vec![(if f.rank() == 0 { Vec::new() } else { vec![g.to_vec()] }, 1)]);
    }
    let (w, s) = split(g)?;
    Ok(branch_gl_to_glgl(&w, f.a, f.b)?
        .into_iter()
        .map(|((x, y), c)| (vec![join(&x, s), join(&y, s)], c))
        .collect())
}

/// All concatenations of one entry from each list, multiplicities multiplied.
fn product(lists: Vec<Vec<(Blocks, u64)>>) -> Vec<(Blocks, u64)> {
    lists.into_iter().fold(vec![(Vec::new(), 1)], |acc, list| {
        acc.iter()
            .flat_map(|(x, cx)| {
                list.iter().map(move |(y, cy)| (x.iter().chain(y).cloned().collect(), cx * cy))
            })
            .collect()
    })
}

/// `∧^j(p⁺ ⊕ p⁻)` for one factor, by the dual Cauchy formula on each half:
/// `∧^i(C^a ⊗ C^b*) = ⊕_λ ρ^λ ⊠ (ρ^{λ'})*` and `∧^k(C^a* ⊗ C^b) = ⊕_κ (ρ^κ)* ⊠ ρ^{κ'}`.
fn exterior_factor(f: SplitFactor, j: usize) -> Result<BTreeMap<Blocks, u64>> {
    let mut out = BTreeMap::new();
    if !f.is_split() {
        if j == 0 {
            out.insert(f.pieces().into_iter().map(|k| vec![HalfInt::ZERO; k]).collect(), 1);
        }
        return Ok(out);
    }
    let (a, b) = (f.a, f.b);
    let shape = |p: &crate::weights::Partition, n: usize| GLWeight::from_partition(p, n);
    for i in 0..=j.min(a * b) {
        let k = j - i;
        if k > a * b {
            continue;
        }
        for lam in partitions_within(i as u32, a, b as u32) {
            for kap in partitions_within(k as u32, a, b as u32) {
                let left = tensor(&ints(shape(&lam, a)?.entries()), &ints(shape(&kap, a)?.dual().entries()))?;
                let right =
                    tensor(&ints(shape(&lam.conjugate(), b)?.dual().entries()), &ints(shape(&kap.conjugate(), b)?.entries()))?;
                for (x, cx) in &left {
                    for (y, cy) in &right {
                        *out.entry(vec![x.clone(), y.clone()]).or_default() += cx * cy;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `M`-types of `∧^j(h/m)` with multiplicities; empty beyond `dim h/m`.
pub fn exterior_decomposition(geom: &TransferGeometry, j: usize) -> Result<Vec<(KTypeLabel, u64)>> {
    let mut acc: BTreeMap<usize, BTreeMap<Blocks, u64>> = BTreeMap::from([(0, BTreeMap::from([(Vec::new(), 1)]))]);
    for &f in &geom.factors {
        let mut next: BTreeMap<usize, BTreeMap<Blocks, u64>> = BTreeMap::new();
        for d in 0..=2 * f.a * f.b {
            let ext = exterior_factor(f, d)?;
            for (&d0, part) in &acc {
                if d0 + d > j {
                    continue;
                }
                let slot = next.entry(d0 + d).or_default();
                for (x, cx) in part {
                    for (y, cy) in &ext {
                        *slot.entry(x.iter().chain(y).cloned().collect()).or_default() += cx * cy;
                    }
                }
            }
        }
        acc = next;
    }
    acc.remove(&j)
        .unwrap_or_default()
        .into_iter()
        .map(|(b, c)| Ok((KTypeLabel::unitary(&b)?, c)))
        .collect()
}

/// `∧^j(h/m)` for `h = u(r,s)`, `m = u(r) ⊕ u(s)`, one entry per irreducible copy.
pub fn exterior_m_decomposition(r: usize, s: usize, j: usize) -> Result<Vec<MTypeLabel>> {
    if j > 2 * r * s {
        return Err(Error::Precondition(format!("∧^{j} of a {}-dimensional space", 2 * r * s)));
    }
    let geom = TransferGeometry::new(vec![SplitFactor { a: r, b: s }]);
    Ok(exterior_decomposition(&geom, j)?
        .into_iter()
        .flat_map(|(label, c)| (0..c).map(move |index| MTypeLabel { label: label.clone(), j, index }))
        .collect())
}

/// `U(rank)`-types with infinitesimal character `infchar` whose entries lie in
/// `central + Z`. A dominant `γ` is recovered as `sorted(v) − ρ`, so there is
/// at most one, and none when `infchar` is singular.
pub fn enumerate_khat(infchar: &InfinitesimalCharacter, central: HalfInt, rank: usize) -> Vec<KTypeLabel> {
    let v = infchar.representative();
    if v.len() != rank || !infchar.has_distinct_entries() {
        return Vec::new();
    }
    let gamma: Weight = v.iter().zip(rho(rank)).map(|(&x, r)| x - r).collect();
    if gamma.iter().any(|g| g.parity_class() != central.parity_class()) {
        return Vec::new();
    }
    KTypeLabel::unitary(&[gamma]).into_iter().collect()
}

/// One irreducible `(h, M̃)`-module `V_l` entering the transfer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferInput {
    pub name: String,
    /// Lowest `M̃`-type; fixes the infinitesimal character factor by factor.
    pub lowest: KTypeLabel,
    /// `M̃`-spectrum, complete up to its horizon in the grading `deg`.
    pub m_series: CharacterSeries,
    /// Multiplicity of `V_l` in `V`.
    pub weight: u64,
    /// `deg(σ) = |σ|₁ − offset` for every `M̃`-type `σ` of `V_l`.
    pub offset: HalfInt,
}

impl TransferInput {
    /// Per factor of `K₂`: the infinitesimal character and the class of its entries.
    fn infchar(&self, geom: &TransferGeometry) -> Result<Vec<(InfinitesimalCharacter, HalfInt)>> {
        let blocks = self.lowest.unitary_blocks().ok_or_else(|| {
            Error::MissingData(format!("{}: lowest type {} is not unitary", self.name, self.lowest))
        })?;
        if blocks.len() != geom.m_pieces() {
            return Err(Error::DimensionMismatch { expected: geom.m_pieces(), got: blocks.len() });
        }
        let mut it = blocks.into_iter();
        let mut out = Vec::new();
        for f in &geom.factors {
            let pieces: Vec<Weight> = f.pieces().iter().map(|_| it.next().expect("counted")).collect();
            // The dual-row block leads: `L` is lowest weight for the `p⁺` roots.
            let (x, y) = match (f.a > 0, f.b > 0) {
                (true, true) => (pieces[0].clone(), pieces[1].clone()),
                (true, false) => (pieces[0].clone(), Vec::new()),
                _ => (Vec::new(), pieces.first().cloned().unwrap_or_default()),
            };
            let v: Weight = y.iter().chain(&x).zip(rho(f.rank())).map(|(&e, r)| e + r).collect();
            let class = HalfInt::from_halves(x.iter().chain(&y).next().map_or(0, |e| e.parity_class()));
            out.push((InfinitesimalCharacter::from_unsorted(v), class));
        }
        Ok(out)
    }

    /// The unique `K̃₂`-type sharing the infinitesimal and central character, if any.
    fn khat(&self, geom: &TransferGeometry) -> Result<Option<Blocks>> {
        let mut gamma = Vec::new();
        for ((ic, class), f) in self.infchar(geom)?.into_iter().zip(&geom.factors) {
            match enumerate_khat(&ic, class, f.rank()).pop() {
                Some(l) => gamma.extend(l.unitary_blocks().expect("unitary")),
                None => return Ok(None),
            }
        }
        Ok(Some(gamma))
    }
}

/// `dim Hom_M(W ⊗ γ, V_l) = Σ_σ [W ⊗ γ|_M : σ]·[V_l : σ]`, refusing any `σ`
/// beyond the horizon of `V_l`.
fn hom_dimension(input: &TransferInput, geom: &TransferGeometry, w: &Blocks, gamma: &Blocks) -> Result<u64> {
    let restricted = product(
        geom.factors.iter().zip(gamma).map(|(&f, g)| branch(g, f)).collect::<Result<Vec<_>>>()?,
    );
    let mut total = 0;
    for (tau, ct) in restricted {
        let pieces = w.iter().zip(&tau).map(|(x, y)| {
            tensor(x, y).map(|v| v.into_iter().map(|(b, c)| (vec![b], c)).collect::<Vec<_>>())
        });
        for (sigma, cs) in product(pieces.collect::<Result<Vec<_>>>()?) {
            let label = KTypeLabel::unitary(&sigma)?;
            let deg = label.l1_norm() - input.offset;
            if deg > HalfInt::from_int(i64::from(input.m_series.horizon())) {
                return Err(Error::Precondition(format!(
                    "{}: M-type {label} has degree {deg}, beyond horizon {}",
                    input.name,
                    input.m_series.horizon()
                )));
            }
            total += ct * cs * input.m_series.get(&label);
        }
    }
    Ok(total)
}

/// `Γ_W V = ⊕_l Hom_M(W, V_l ⊗ γ_l*) ⊗ γ_l`, restricted to the `γ` with `|γ|₁ ≤ bound`.
pub fn gamma_w_spectrum(
    inputs: &[TransferInput],
    w: &KTypeLabel,
    geom: &TransferGeometry,
    bound: u32,
) -> Result<CharacterSeries> {
    let w_blocks = w.unitary_blocks().ok_or_else(|| Error::MissingData(format!("W = {w} is not unitary")))?;
    let mut out = CharacterSeries::new(bound);
    for input in inputs {
        let Some(gamma) = input.khat(geom)? else { continue };
        let label = KTypeLabel::unitary(&gamma)?;
        if label.l1_norm() > HalfInt::from_int(i64::from(bound)) {
            continue;
        }
        let mult = hom_dimension(input, geom, &w_blocks, &gamma)?;
        out.add(label, input.weight * mult);
    }
    Ok(out)
}

/// `Γ_W` for one `W` together with its multiplicity in `∧^j(h/m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WContribution {
    pub w: KTypeLabel,
    pub copies: u64,
    pub gamma: CharacterSeries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaJ {
    pub j: usize,
    pub total: CharacterSeries,
    pub per_w: Vec<WContribution>,
}

/// `Γ^j V = ⊕_W Γ_W V` over the summands of `∧^j(h/m)`, with the breakdown kept.
pub fn gamma_j_spectrum(inputs: &[TransferInput], geom: &TransferGeometry, j: usize, bound: u32) -> Result<GammaJ> {
    let mut total = CharacterSeries::new(bound);
    let mut per_w = Vec::new();
    for (w, copies) in exterior_decomposition(geom, j)? {
        let gamma = gamma_w_spectrum(inputs, &w, geom, bound)?;
        for (l, m) in gamma.iter() {
            total.add(l.clone(), copies * m);
        }
        per_w.push(WContribution { w, copies, gamma });
    }
    Ok(GammaJ { j, total, per_w })
}
