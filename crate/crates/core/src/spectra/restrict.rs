use serde::{Deserialize, Serialize};

use super::oracle::{guard, product_action};
use super::{half, mixed_weight, partitions_up_to, shifted_label, CharacterDatum};
use crate::fock::isotypic_decompose;
use crate::pairs::{build_pair, DualPairDescriptor, RealGroup, SeesawConfig};
use crate::weights::{
    branch_gl_to_o, gl_tensor, normalize_polynomial, CharacterSeries, FactorLabel, GLWeight, HalfInt, KTypeLabel,
    OCharacter,
};
use crate::{Error, Result};

/// One summand `n_μ L(μ)` of `θ(ρ)|_h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionTerm {
    pub mu: KTypeLabel,
    pub n_mu: u64,
    /// Fock degree of the lowest M̃-type of `L(μ)`.
    pub degree: u32,
}

/// `θ(ρ)|_h = ⊕ n_μ L(μ)` for `(Sp(2n,R), O(m)) ⊃ (U(r,s), U(m))`, listing the
/// `μ` with `n_μ = dim Hom_{O(m)}(μ, ρ) > 0` reached by Fock degree `cutoff`.
pub fn theta_restrict_to_h(seesaw: &SeesawConfig, d: &CharacterDatum, cutoff: u32) -> Result<Vec<RestrictionTerm>> {
    if d.pair != seesaw.outer.descriptor {
        return Err(Error::Precondition(format!("character of {} on see-saw over {}", d.pair, seesaw.outer.descriptor)));
    }
    let (RealGroup::O { p: m, q: 0 }, RealGroup::U { p: r, q: s }, RealGroup::U { p: m2, q: 0 }) =
        (d.pair.groups[1], seesaw.inner.descriptor.groups[0], seesaw.inner.descriptor.groups[1])
    else {
        return Err(Error::Unsupported(format!(
            "restriction needs O(m) ⊂ U(m) compact, got {} over {}",
            seesaw.inner.descriptor, d.pair
        )));
    };
    if m != m2 {
        return Err(Error::Precondition(format!("O({m}) inside U({m2})")));
    }
    let eps = d.parity.map_or(0, |c| c.xi);
    let shift = half(r as i64 - s as i64);
    let mut out = Vec::new();
    for al in partitions_up_to(cutoff, r.min(m)) {
        for be in partitions_up_to(cutoff - al.size(), s.min(m)) {
            if al.len() + be.len() > m {
                continue;
            }
            let w = mixed_weight(&al, &be, m);
            let (nu, t) = normalize_polynomial(&GLWeight::new(w.clone())?);
            let n_mu = branch_gl_to_o(&nu, m, OCharacter::from_parity(i64::from(eps) + t))?;
            if n_mu > 0 {
                out.push(RestrictionTerm { mu: shifted_label(&[(w, shift)])?, n_mu, degree: al.size() + be.size() });
            }
        }
    }
    Ok(out)
}

/// `L(μ)`: the lift of the `H̃′`-type `μ` through a compact pair `(U(r,s), U(m))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowestWeightModule {
    pub compact_pair: DualPairDescriptor,
    pub mu: KTypeLabel,
}

impl LowestWeightModule {
    fn shape(&self) -> Result<(usize, usize, usize, GLWeight)> {
        let (RealGroup::U { p: r, q: s }, RealGroup::U { p: m, q: 0 }) =
            (self.compact_pair.groups[0], self.compact_pair.groups[1])
        else {
            return Err(Error::InvalidDescriptor(format!("{} is not a (U(r,s), U(m)) pair", self.compact_pair)));
        };
        let entries = match self.mu.factors.as_slice() {
            [f @ FactorLabel::Unitary { .. }] => f.entries().expect("unitary"),
            _ => return Err(Error::InvalidDescriptor(format!("μ = {} is not a U({m})-type", self.mu))),
        };
        let shift = half(r as i64 - s as i64);
        let w = entries
            .iter()
            .map(|&e| (e - shift).to_int())
            .collect::<Option<Vec<_>>>()
            .filter(|w| w.len() == m)
            .ok_or_else(|| Error::InvalidDescriptor(format!("μ = {} lacks the central shift {shift}", self.mu)))?;
        Ok((r, s, m, GLWeight::new(w)?))
    }
}

fn m_label(al: &[i64], be: &[i64], r: usize, s: usize, m: usize) -> Result<KTypeLabel> {
    let blocks: Vec<(Vec<i64>, HalfInt)> = [(r, al.to_vec(), half(m as i64)), (s, be.to_vec(), half(-(m as i64)))]
        .into_iter()
        .filter(|(k, _, _)| *k > 0)
        .map(|(_, w, sh)| (w, sh))
        .collect();
    shifted_label(&blocks)
}

/// M̃ = U(r)×U(s)-spectrum of `L(μ)` by GL–GL duality:
/// `[L(μ) : α ⊠ β*] = [α ⊗ β* : μ]` as `U(m)`-types.
pub fn lowest_weight_m_spectrum(l: &LowestWeightModule, cutoff: u32) -> Result<CharacterSeries> {
    let (r, s, m, mu) = l.shape()?;
    let mut out = CharacterSeries::graded(cutoff);
    for al in partitions_up_to(cutoff, r.min(m)) {
        for be in partitions_up_to(cutoff - al.size(), s.min(m)) {
            let a = GLWeight::from_partition(&al, m)?;
            let b = GLWeight::from_partition(&be, m)?.dual();
            let c = gl_tensor(&a, &b)?.get(&mu).copied().unwrap_or(0);
            if c > 0 {
                let x = mixed_weight(&al, &Default::default(), r);
                let y = mixed_weight(&Default::default(), &be, s);
                out.add_graded(al.size() + be.size(), m_label(&x, &y, r, s, m)?, c);
            }
        }
    }
    Ok(out)
}

/// Brute-force counterpart of [`lowest_weight_m_spectrum`]: decompose Fock
/// space under `M̃ × H̃′` and keep the types whose `H̃′` part is `μ`.
pub fn lowest_weight_m_oracle(l: &LowestWeightModule, cutoff: u32) -> Result<CharacterSeries> {
    l.shape()?;
    let slice = guard(l.compact_pair.fock_vars(), cutoff)?;
    let pair = build_pair(&l.compact_pair)?;
    let action = product_action(&pair.g.group_meta, &pair.g_prime.group_meta);
    let mut out = CharacterSeries::graded(cutoff);
    for c in isotypic_decompose(&action, &slice)? {
        let (m_part, h_part) = c.label.factors.split_at(c.label.factors.len() - 1);
        if h_part == l.mu.factors.as_slice() {
            out.add_graded(c.degree, KTypeLabel::new(m_part.to_vec()), c.multiplicity as u64);
        }
    }
    Ok(out)
}
