use std::fmt;

use serde::{Deserialize, Serialize};

use super::descriptor::{DualPairDescriptor, Family, RealGroup};
use crate::weights::{FactorLabel, KTypeLabel, Partition};
use crate::{Error, Result};

/// Stable-range predicate, second member the smaller one.
pub fn stable_range(d: &DualPairDescriptor) -> bool {
    use RealGroup::*;
    match (d.groups[0], d.groups[1]) {
        (Sp { n }, O { p, q }) => n >= p + q,
        (U { p, q }, U { p: n1, q: n2 }) => p.min(q) >= n1 + n2,
        (SpQ { p, q }, OStar { n }) => p >= n && q >= n,
        (OStar { n }, SpQ { p, q }) => n >= 2 * (p + q),
        (O { p, q }, Sp { n }) => p >= 2 * n && q >= 2 * n && p.max(q) > 2 * n,
        _ => false,
    }
}

/// `j(p,q)`: the exterior degree at which `θ^{p,q}` appears in `Γ^j θ^{m,0}`.
pub fn degree_j(family: Family, r: u32, s: u32, p: u32, q: u32) -> Result<u64> {
    let (r, s, p, q) = (i64::from(r), i64::from(s), i64::from(p), i64::from(q));
    let scale = if family == Family::D { 2 } else { 1 };
    if scale * p > r || scale * q > s {
        return Err(Error::Hypothesis(format!(
            "type {family} needs {scale}p ≤ r and {scale}q ≤ s, got r={r}, s={s}, p={p}, q={q}"
        )));
    }
    let base = r * s - (r - scale * p) * (s - scale * q);
    let j = if family == Family::C { 2 * base } else { base };
    Ok(j as u64)
}

/// `j₀` of the singular-transfer table; `n` is `n₁+n₂` in type A.
pub fn degree_j0(family: Family, n: u32, r: u32) -> u64 {
    let (n, r) = (u64::from(n), u64::from(r));
    match family {
        Family::A | Family::D => n * r,
        Family::C => 2 * n * r,
    }
}

/// The character `1^{ξ,η}` of `O(p,q)`: `det^ξ ⊗ det^η` on `O(p)×O(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OCharacterLabel {
    pub p: usize,
    pub q: usize,
    pub xi: u8,
    pub eta: u8,
}

impl OCharacterLabel {
    pub fn new(p: usize, q: usize, xi: i64, eta: i64) -> Self {
        OCharacterLabel { p, q, xi: xi.rem_euclid(2) as u8, eta: eta.rem_euclid(2) as u8 }
    }

    /// As a type of `O(p)×O(q)`; factors of size zero are dropped.
    pub fn to_ktype(&self) -> KTypeLabel {
        let sign = |e: u8| if e == 0 { 1 } else { -1 };
        let factors = [(self.p, self.xi), (self.q, self.eta)]
            .into_iter()
            .filter(|&(n, _)| n > 0)
            .map(|(n, e)| FactorLabel::orthogonal(n, Partition::empty(), sign(e)).expect("trivial weight fits"))
            .collect();
        KTypeLabel::new(factors)
    }
}

impl fmt::Display for OCharacterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1^{{{},{}}}", self.xi, self.eta)
    }
}

/// `ρ_{p,q} = 1^{ξ,η}` with `ξ ≡ ε−(s−q)`, `η ≡ ε−(r−p)` (mod 2). Type C only.
pub fn rho_pq(family: Family, eps: i64, r: u32, s: u32, p: u32, q: u32) -> Result<OCharacterLabel> {
    if family != Family::C {
        return Err(Error::Unsupported(format!("ρ_(p,q) is a type C notion, got type {family}")));
    }
    degree_j(family, r, s, p, q)?;
    let (r, s, p, q) = (i64::from(r), i64::from(s), i64::from(p), i64::from(q));
    Ok(OCharacterLabel::new(p as usize, q as usize, eps - (s - q), eps - (r - p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_j_examples() {
        assert_eq!(degree_j(Family::C, 1, 1, 1, 0).unwrap(), 2);
        assert_eq!(degree_j(Family::A, 2, 1, 1, 1).unwrap(), 2);
        for f in [Family::A, Family::C, Family::D] {
            assert_eq!(degree_j(f, 3, 2, 0, 0).unwrap(), 0);
        }
        assert!(degree_j(Family::A, 1, 1, 2, 0).is_err());
        assert!(degree_j(Family::D, 2, 2, 2, 0).is_err());
        assert_eq!(degree_j(Family::D, 2, 4, 1, 2).unwrap(), 8);
    }

    #[test]
    fn degree_j0_examples() {
        assert_eq!(degree_j0(Family::C, 1, 1), 2);
        assert_eq!(degree_j0(Family::D, 1, 1), 1);
        assert_eq!(degree_j0(Family::A, 1, 1), 1);
    }

    #[test]
    fn stable_range_examples() {
        let d = |s: &str| s.parse::<DualPairDescriptor>().unwrap();
        assert!(stable_range(&d("C:sp(4)/o(1,1)")));
        assert!(!stable_range(&d("C:sp(2)/o(1,1)")));
        assert!(stable_range(&d("D:o(3,2)/sp(2)")));
        assert!(!stable_range(&d("D:o(2,2)/sp(2)")));
        assert!(stable_range(&d("A:u(2,2)/u(1)")));
        assert!(!stable_range(&d("A:u(2,2)/u(2,1)")));
    }

    #[test]
    fn rho_pq_parities() {
        assert_eq!(rho_pq(Family::C, 0, 1, 1, 1, 0).unwrap().to_string(), "1^{1,0}");
        assert_eq!(rho_pq(Family::C, 0, 1, 1, 0, 1).unwrap().to_string(), "1^{0,1}");
        assert_eq!(rho_pq(Family::C, 0, 2, 3, 2, 3).unwrap().to_string(), "1^{0,0}");
        assert_eq!(rho_pq(Family::C, 1, 2, 3, 2, 3).unwrap().to_string(), "1^{1,1}");
        assert!(rho_pq(Family::A, 0, 1, 1, 1, 0).is_err());
        assert_eq!(rho_pq(Family::C, 0, 1, 1, 1, 0).unwrap().to_ktype().to_string(), "O1()-");
    }
}
