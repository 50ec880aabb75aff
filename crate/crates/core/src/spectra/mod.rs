//! K-spectra of theta lifts of one-dimensional characters, combinatorially
//! and by brute force on truncated Fock space, plus the see-saw restriction
//! data `θ(ρ)|_h = ⊕ n_μ L(μ)`.

mod oracle;
mod restrict;

use serde::{Deserialize, Serialize};

pub use oracle::{product_action, theta_spectrum_oracle, ORACLE_GUARD};
pub(crate) use oracle::character_constraints;
pub use restrict::{
    lowest_weight_m_oracle, lowest_weight_m_spectrum, theta_restrict_to_h, LowestWeightModule, RestrictionTerm,
};

use crate::pairs::{stable_range, DualPairDescriptor, OCharacterLabel, RealGroup};
use crate::weights::{branch_gl_to_o, partitions_of, CharacterSeries, HalfInt, KTypeLabel, OCharacter, Partition};
use crate::{Error, Result};

/// A one-dimensional character of the smaller member `G′` of a dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterDatum {
    pub pair: DualPairDescriptor,
    /// `1^{ξ,η}` for `O(p,q)`; `None` for the (cover-twisted) trivial character.
    pub parity: Option<OCharacterLabel>,
    /// For `U(k)`: the power of `det` by which the character differs from the
    /// canonical genuine one, of weight `(p−q)/2` on every entry.
    #[serde(default)]
    pub det_power: i64,
}

impl CharacterDatum {
    pub fn trivial(pair: DualPairDescriptor) -> Self {
        match pair.groups[1] {
            RealGroup::O { p, q } => CharacterDatum { pair, parity: Some(OCharacterLabel::new(p, q, 0, 0)), det_power: 0 },
            _ => CharacterDatum { pair, parity: None, det_power: 0 },
        }
    }

    /// `1^{ξ,η}` of `O(p,q)`; for compact `O(m)`, `ξ = 1` is `det`.
    pub fn orthogonal(pair: DualPairDescriptor, xi: i64, eta: i64) -> Result<Self> {
        let RealGroup::O { p, q } = pair.groups[1] else {
            return Err(Error::InvalidDescriptor(format!("{pair}: smaller member is not orthogonal")));
        };
        Ok(CharacterDatum { pair, parity: Some(OCharacterLabel::new(p, q, xi, eta)), det_power: 0 })
    }

    /// `det^t` times the canonical genuine character of a compact `U(k)`.
    pub fn unitary(pair: DualPairDescriptor, t: i64) -> Result<Self> {
        let RealGroup::U { q: 0, .. } = pair.groups[1] else {
            return Err(Error::InvalidDescriptor(format!("{pair}: smaller member is not a compact U(k)")));
        };
        Ok(CharacterDatum { pair, parity: None, det_power: t })
    }

    /// Reads `trivial`, `det`, `1^{ξ,η}` or `ξ,η` for orthogonal `G′`, and
    /// `trivial` or `det^t` for unitary `G′`.
    pub fn parse(pair: DualPairDescriptor, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = || Error::Parse(format!("character {spec:?} of {}", pair.groups[1]));
        match pair.groups[1] {
            RealGroup::O { .. } => {
                let (xi, eta) = match spec {
                    "trivial" => (0, 0),
                    "det" => (1, 1),
                    _ => {
                        let body = spec.strip_prefix("1^{").and_then(|b| b.strip_suffix('}')).unwrap_or(spec);
                        let (a, b) = body.split_once(',').ok_or_else(bad)?;
                        (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
                    }
                };
                Self::orthogonal(pair, xi, eta)
            }
            RealGroup::U { .. } => match spec {
                "trivial" => Ok(Self::trivial(pair)),
                "det" => Self::unitary(pair, 1),
                _ => {
                    let t = spec.strip_prefix("det^").ok_or_else(bad)?;
                    Self::unitary(pair, t.trim_matches(['(', ')']).parse().map_err(|_| bad())?)
                }
            },
            _ => Err(Error::Unsupported(format!("characters of {}", pair.groups[1]))),
        }
    }

    /// Central shift of the larger member's maximal compact subgroup, per unitary factor.
    pub fn genuine_shift(&self) -> Vec<HalfInt> {
        match (self.pair.groups[0], self.pair.groups[1]) {
            (RealGroup::Sp { .. }, RealGroup::O { p, q }) => vec![half(p as i64 - q as i64)],
            (RealGroup::U { p, q }, RealGroup::U { p: k, q: l }) => {
                let s = half(k as i64 - l as i64);
                [(p, s), (q, -s)].into_iter().filter(|&(r, _)| r > 0).map(|(_, s)| s).collect()
            }
            _ => Vec::new(),
        }
    }
}

fn half(k: i64) -> HalfInt {
    HalfInt::from_halves(k)
}

/// Unitary label from integer blocks and per-block shifts.
pub(crate) fn shifted_label(blocks: &[(Vec<i64>, HalfInt)]) -> Result<KTypeLabel> {
    let full: Vec<Vec<HalfInt>> =
        blocks.iter().map(|(w, s)| w.iter().map(|&e| HalfInt::from_int(e) + *s).collect()).collect();
    KTypeLabel::unitary(&full)
}

/// Partitions of size ≤ `d` with at most `len` parts.
pub(crate) fn partitions_up_to(d: u32, len: usize) -> impl Iterator<Item = Partition> {
    (0..=d).flat_map(move |k| partitions_of(k, len))
}

/// `(a, 0, …, 0, −rev b)` in `n` slots.
pub(crate) fn mixed_weight(a: &Partition, b: &Partition, n: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for (i, &x) in a.parts().iter().enumerate() {
        w[i] = i64::from(x);
    }
    for (i, &x) in b.parts().iter().enumerate() {
        w[n - 1 - i] = -i64::from(x);
    }
    w
}

/// K̃-spectrum of `Θ(ρ)` from GL–GL duality and the branching of
/// one-dimensional characters, graded by Fock degree up to `cutoff`.
pub fn theta_character_spectrum(d: &CharacterDatum, cutoff: u32) -> Result<CharacterSeries> {
    let mut out = CharacterSeries::graded(cutoff);
    match (d.pair.groups[0], d.pair.groups[1]) {
        (RealGroup::Sp { n }, RealGroup::O { p, q }) => {
            if q > 0 && p > 0 && !stable_range(&d.pair) {
                return Err(Error::Unstable(format!("{} with noncompact O({p},{q})", d.pair)));
            }
            let chi = d.parity.unwrap_or(OCharacterLabel::new(p, q, 0, 0));
            let shift = half(p as i64 - q as i64);
            for a in partitions_up_to(cutoff, n.min(p)) {
                let ma = if p == 0 { 1 } else { branch_gl_to_o(&a, p, OCharacter::from_parity(chi.xi.into()))? };
                if ma == 0 {
                    continue;
                }
                for b in partitions_up_to(cutoff - a.size(), n.min(q)) {
                    if a.len() + b.len() > n {
                        continue;
                    }
                    let mb = if q == 0 { 1 } else { branch_gl_to_o(&b, q, OCharacter::from_parity(chi.eta.into()))? };
                    if mb == 0 {
                        continue;
                    }
                    let label = shifted_label(&[(mixed_weight(&a, &b, n), shift)])?;
                    out.add_graded(a.size() + b.size(), label, ma * mb);
                }
            }
        }
        (RealGroup::U { p, q }, RealGroup::U { p: k, q: 0 }) => {
            // α ⊗ β* contains det^t iff α = β + t(1,…,1) in k slots.
            let t = d.det_power;
            let (sp, sq) = (half(k as i64), half(-(k as i64)));
            let floor = k as u32 * t.unsigned_abs() as u32;
            let reach = if floor > cutoff { None } else { Some((cutoff - floor) / 2) };
            for ga in reach.into_iter().flat_map(|c| partitions_up_to(c, k)) {
                let up = Partition::new(ga.padded(k).iter().map(|&x| x + t.unsigned_abs() as u32).collect())?;
                let (al, be) = if t >= 0 { (up, ga.clone()) } else { (ga.clone(), up) };
                if al.len() > p || be.len() > q {
                    continue;
                }
                let x = mixed_weight(&al, &Partition::empty(), p);
                let y = mixed_weight(&Partition::empty(), &be, q);
                let blocks: Vec<_> = [(p, x, sp), (q, y, sq)]
                    .into_iter()
                    .filter(|(r, _, _)| *r > 0)
                    .map(|(_, w, s)| (w, s))
                    .collect();
                out.add_graded(al.size() + be.size(), shifted_label(&blocks)?, 1);
            }
        }
        _ => return Err(Error::Unsupported(format!("combinatorial spectrum for {}", d.pair))),
    }
    Ok(out)
}

/// Multiplicity-one test; returns the offending labels.
pub fn multiplicity_free_check(s: &CharacterSeries) -> (bool, Vec<(KTypeLabel, u64)>) {
    let bad: Vec<_> = s.iter().filter(|&(_, m)| m > 1).map(|(l, m)| (l.clone(), m)).collect();
    (bad.is_empty(), bad)
}
