use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weakly decreasing list of positive integers; the empty list is the empty partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts trailing zeros and strips them.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidDescriptor(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i`-th part, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0) as usize;
        Partition((0..w).map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32).collect())
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.part(i)).collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Highest weight of `U(n)`: weakly decreasing integers, negative entries allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GLWeight {
    entries: Vec<i64>,
}

impl GLWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDescriptor(format!("{entries:?} is not dominant")));
        }
        Ok(Self { entries })
    }

    pub fn zero(rank: usize) -> Self {
        Self { entries: vec![0; rank] }
    }

    pub fn from_partition(p: &Partition, rank: usize) -> Result<Self> {
        if p.len() > rank {
            return Err(Error::InvalidDescriptor(format!("{p} has more than {rank} parts")));
        }
        Ok(Self { entries: p.padded(rank).into_iter().map(i64::from).collect() })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.last().is_none_or(|&e| e >= 0)
    }

    /// The polynomial weight, when all entries are non-negative.
    pub fn to_partition(&self) -> Option<Partition> {
        self.is_polynomial()
            .then(|| Partition::new(self.entries.iter().map(|&e| e as u32).collect()).expect("dominant"))
    }

    pub fn shifted(&self, t: i64) -> GLWeight {
        GLWeight { entries: self.entries.iter().map(|e| e + t).collect() }
    }

    /// Highest weight of the contragredient.
    pub fn dual(&self) -> GLWeight {
        GLWeight { entries: self.entries.iter().rev().map(|e| -e).collect() }
    }
}

impl fmt::Debug for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// All partitions of `n` with at most `max_len` parts, each part at most `max_part`.
pub fn partitions_within(n: u32, max_len: usize, max_part: u32) -> Vec<Partition> {
    fn rec(n: u32, max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            rec(n - p, max_len, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_of(n: u32, max_len: usize) -> Vec<Partition> {
    partitions_within(n, max_len, n)
}
