use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{lr_coefficient, lr_products, partitions_within, GLWeight, Partition};
use crate::{Error, Result};

/// The one-dimensional characters of a compact orthogonal group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OCharacter {
    Trivial,
    Det,
}

impl OCharacter {
    pub fn from_parity(eps: i64) -> Self {
        if eps.rem_euclid(2) == 0 {
            OCharacter::Trivial
        } else {
            OCharacter::Det
        }
    }

    pub fn parity(self) -> i64 {
        match self {
            OCharacter::Trivial => 0,
            OCharacter::Det => 1,
        }
    }

    /// Eigenvalue of a reflection.
    pub fn sign(self) -> i64 {
        1 - 2 * self.parity()
    }

    pub fn twist(self, det_power: i64) -> Self {
        OCharacter::from_parity(self.parity() + det_power)
    }
}

/// Splits a mixed-sign weight into `(partition, t)` with `w = partition − t·(1,…,1)`.
pub fn normalize_polynomial(w: &GLWeight) -> (Partition, i64) {
    let t = w.entries().last().map_or(0, |&e| (-e).max(0));
    (w.shifted(t).to_partition().expect("shifted weight is polynomial"), t)
}

/// Restriction of the `U(r+s)`-type `lam` to `U(r) × U(s)`.
pub fn branch_gl_to_glgl(lam: &GLWeight, r: usize, s: usize) -> Result<BTreeMap<(GLWeight, GLWeight), u64>> {
    if r + s != lam.rank() {
        return Err(Error::InvalidDescriptor(format!("{r} + {s} != rank {}", lam.rank())));
    }
    let (poly, t) = normalize_polynomial(lam);
    let mut out = BTreeMap::new();
    for k in 0..=poly.size() {
        for mu in partitions_within(k, r, poly.part(0)) {
            if !poly.contains(&mu) {
                continue;
            }
            for nu in partitions_within(poly.size() - k, s, poly.part(0)) {
                let c = lr_coefficient(&poly, &mu, &nu);
                if c > 0 {
                    let a = GLWeight::from_partition(&mu, r)?.shifted(-t);
                    let b = GLWeight::from_partition(&nu, s)?.shifted(-t);
                    out.insert((a, b), c);
                }
            }
        }
    }
    Ok(out)
}

/// Tensor product of two `U(k)`-types.
pub fn gl_tensor(a: &GLWeight, b: &GLWeight) -> Result<BTreeMap<GLWeight, u64>> {
    if a.rank() != b.rank() {
        return Err(Error::DimensionMismatch { expected: a.rank(), got: b.rank() });
    }
    let k = a.rank();
    let (pa, ta) = normalize_polynomial(a);
    let (pb, tb) = normalize_polynomial(b);
    lr_products(&pa, &pb, k)
        .into_iter()
        .map(|(nu, c)| Ok((GLWeight::from_partition(&nu, k)?.shifted(-ta - tb), c)))
        .collect()
}

/// Multiplicity of the character `which` of `O(m)` in the `GL(m)`-type `lam`.
///
/// Trivial occurs (once) iff every part is even; `det` occurs (once) iff
/// `lam` has exactly `m` parts, all odd. Weights with more than `m` parts are
/// not `GL(m)`-types and are refused.
pub fn branch_gl_to_o(lam: &Partition, m: usize, which: OCharacter) -> Result<u64> {
    if lam.len() > m {
        return Err(Error::Unstable(format!("{lam} has more than {m} parts; not a GL({m})-type")));
    }
    Ok(match which {
        OCharacter::Trivial => u64::from(lam.all_even()),
        OCharacter::Det => u64::from(lam.len() == m && lam.parts().iter().all(|p| p % 2 == 1)),
    })
}

/// Multiplicity of the trivial `Sp(2m)`-type in the `GL(2m)`-type `lam`:
/// one iff every column of `lam` has even length.
pub fn branch_gl_to_sp(lam: &Partition, two_m: usize) -> Result<u64> {
    if !two_m.is_multiple_of(2) {
        return Err(Error::InvalidDescriptor(format!("Sp needs an even dimension, got {two_m}")));
    }
    if lam.len() > two_m {
        return Err(Error::Unstable(format!("{lam} has more than {two_m} parts; not a GL({two_m})-type")));
    }
    Ok(u64::from(lam.conjugate().all_even()))
}
