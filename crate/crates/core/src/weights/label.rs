use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{GLWeight, HalfInt, Partition};
use crate::{Error, Result};

/// Dimension of the `U(n)`-irreducible with highest weight `w`.
///
/// Only differences of entries matter, so a weight shifted by a common
/// half-integer can be passed through its integer part.
pub fn weyl_dim(w: &[i64]) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            num *= (w[i] - w[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
            let g = num.gcd(&den);
            num /= g;
            den /= g;
        }
    }
    num / den
}

/// Sorted `ρ`-shifted weight; equal representatives mean equal infinitesimal characters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InfinitesimalCharacter(Vec<HalfInt>);

impl InfinitesimalCharacter {
    pub fn from_unsorted(mut v: Vec<HalfInt>) -> Self {
        v.sort_unstable_by(|a, b| b.cmp(a));
        InfinitesimalCharacter(v)
    }

    pub fn representative(&self) -> &[HalfInt] {
        &self.0
    }

    pub fn has_distinct_entries(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

/// `ρ_n = ((n−1)/2, (n−3)/2, …, −(n−1)/2)`.
pub fn rho(n: usize) -> Vec<HalfInt> {
    (0..n).map(|i| HalfInt::from_halves(n as i64 - 1 - 2 * i as i64)).collect()
}

/// Infinitesimal character of the `U(n)`-type `w + shift·(1,…,1)`.
pub fn infinitesimal_character(w: &GLWeight, shift: HalfInt) -> InfinitesimalCharacter {
    let r = rho(w.rank());
    InfinitesimalCharacter::from_unsorted(
        w.entries().iter().zip(r).map(|(&e, rho_i)| HalfInt::from_int(e) + shift + rho_i).collect(),
    )
}

/// One factor of a K-type label.
///
/// Unitary labels are canonical: `shift` is `0` or `1/2` and `weight` holds
/// the remaining integer part, so two labels are equal iff they describe the
/// same representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorLabel {
    Unitary { weight: GLWeight, shift: HalfInt },
    /// `O(n)`-type: `so(n)` highest weight plus the eigenvalue of a reflection
    /// fixing the highest weight vector. The sign is `+1` when that reflection
    /// does not separate the type from its `det`-twist.
    Orthogonal { n: usize, weight: Partition, sign: i8 },
}

impl FactorLabel {
    /// A `U(k)`-type from its (half-integral, weakly decreasing) highest weight.
    pub fn unitary(entries: &[HalfInt]) -> Result<Self> {
        let class = entries.first().map_or(0, |e| e.parity_class());
        if entries.iter().any(|e| e.parity_class() != class) {
            return Err(Error::InvalidDescriptor(format!("mixed integrality in {entries:?}")));
        }
        let shift = HalfInt::from_halves(class);
        let weight = GLWeight::new(entries.iter().map(|&e| (e - shift).to_int().expect("integral")).collect())?;
        Ok(FactorLabel::Unitary { weight, shift })
    }

    pub fn unitary_int(entries: &[i64]) -> Result<Self> {
        Ok(FactorLabel::Unitary { weight: GLWeight::new(entries.to_vec())?, shift: HalfInt::ZERO })
    }

    pub fn orthogonal(n: usize, weight: Partition, sign: i8) -> Result<Self> {
        if weight.len() > n / 2 || !matches!(sign, 1 | -1) {
            return Err(Error::InvalidDescriptor(format!("O({n}) label {weight} with sign {sign}")));
        }
        let sign = if 2 * weight.len() == n { 1 } else { sign };
        Ok(FactorLabel::Orthogonal { n, weight, sign })
    }

    /// Full highest weight of a unitary factor.
    pub fn entries(&self) -> Option<Vec<HalfInt>> {
        match self {
            FactorLabel::Unitary { weight, shift } => {
                Some(weight.entries().iter().map(|&e| HalfInt::from_int(e) + *shift).collect())
            }
            FactorLabel::Orthogonal { .. } => None,
        }
    }

    pub fn dim(&self) -> u128 {
        match self {
            FactorLabel::Unitary { weight, .. } => weyl_dim(weight.entries()),
            FactorLabel::Orthogonal { n, weight, .. } => orthogonal_dim(*n, weight),
        }
    }
}

/// Dimension of the `O(n)`-type with `so(n)` highest weight `lam`.
fn orthogonal_dim(n: usize, lam: &Partition) -> u128 {
    if n <= 1 {
        return 1;
    }
    // Weyl dimension formula for so(n), then doubled when the O(n)-type
    // restricts to two so(n)-types (n even, full length, last part > 0).
    let r = n / 2;
    let l: Vec<i64> = (0..r).map(|i| i64::from(lam.part(i))).collect();
    let (mut num, mut den) = (1i128, 1i128);
    if n % 2 == 1 {
        // rho_i = r − i − 1/2; work with doubled values.
        let rho2: Vec<i64> = (0..r).map(|i| 2 * (r - i) as i64 - 1).collect();
        let a: Vec<i64> = (0..r).map(|i| 2 * l[i] + rho2[i]).collect();
        for i in 0..r {
            num *= a[i] as i128;
            den *= rho2[i] as i128;
            for j in i + 1..r {
                num *= ((a[i] - a[j]) * (a[i] + a[j])) as i128;
                den *= ((rho2[i] - rho2[j]) * (rho2[i] + rho2[j])) as i128;
            }
        }
    } else {
        let rho: Vec<i64> = (0..r).map(|i| (r - i - 1) as i64).collect();
        let a: Vec<i64> = (0..r).map(|i| l[i] + rho[i]).collect();
        for i in 0..r {
            for j in i + 1..r {
                num *= ((a[i] - a[j]) * (a[i] + a[j])) as i128;
                den *= ((rho[i] - rho[j]) * (rho[i] + rho[j])) as i128;
            }
        }
    }
    let d = (num / den) as u128;
    if n.is_multiple_of(2) && lam.len() == r { 2 * d } else { d }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::Unitary { .. } => {
                let e = self.entries().expect("unitary");
                if e.len() == 1 {
                    return write!(f, "{}", e[0]);
                }
                write!(f, "(")?;
                for (k, x) in e.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            FactorLabel::Orthogonal { n, weight, sign } => {
                write!(f, "O{n}{weight}{}", if *sign > 0 { "+" } else { "-" })
            }
        }
    }
}

/// Label of an irreducible type of a product of compact unitary and orthogonal groups.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KTypeLabel {
    pub factors: Vec<FactorLabel>,
}

impl KTypeLabel {
    pub fn new(factors: Vec<FactorLabel>) -> Self {
        KTypeLabel { factors }
    }

    /// Label of a product of unitary groups from full half-integral weights.
    pub fn unitary(blocks: &[Vec<HalfInt>]) -> Result<Self> {
        Ok(KTypeLabel { factors: blocks.iter().map(|b| FactorLabel::unitary(b)).collect::<Result<_>>()? })
    }

    /// Full weights of every factor; `None` if some factor is orthogonal.
    pub fn unitary_blocks(&self) -> Option<Vec<Vec<HalfInt>>> {
        self.factors.iter().map(FactorLabel::entries).collect()
    }

    pub fn dim(&self) -> u128 {
        self.factors.iter().map(FactorLabel::dim).product()
    }

    /// Sum of the absolute values of all unitary highest-weight entries.
    pub fn l1_norm(&self) -> HalfInt {
        self.factors
            .iter()
            .filter_map(FactorLabel::entries)
            .flatten()
            .fold(HalfInt::ZERO, |acc, e| acc + e.abs())
    }
}

impl fmt::Display for KTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "⊠")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for KTypeLabel {
    type Err = Error;

    /// Inverse of `Display`: factors joined by `⊠` (or `x`), each `h`,
    /// `(h,…,h)` or `O{n}(parts){+|-}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("K-type label {s:?}"));
        let factors = s
            .split(['⊠', 'x'])
            .map(|f| {
                let f = f.trim();
                if let Some(rest) = f.strip_prefix('O') {
                    let open = rest.find('(').ok_or_else(bad)?;
                    let n: usize = rest[..open].parse().map_err(|_| bad())?;
                    let (body, sign) = rest[open..].split_at(rest.len() - open - 1);
                    let sign = match sign {
                        "+" => 1,
                        "-" => -1,
                        _ => return Err(bad()),
                    };
                    let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
                    let parts = inner
                        .split(',')
                        .filter(|p| !p.trim().is_empty())
                        .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()?;
                    FactorLabel::orthogonal(n, Partition::new(parts)?, sign)
                } else {
                    let inner = f.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(f);
                    let entries = inner.split(',').map(|h| HalfInt::parse(h.trim())).collect::<Result<Vec<_>>>()?;
                    FactorLabel::unitary(&entries)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KTypeLabel::new(factors))
    }
}
