use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector ordered graded-lexicographically: lower total degree
/// first, then larger leading exponents first (`x₁² < x₁x₂ < x₂²`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponents(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All exponent vectors of length `n` and total degree `d`, in order.
    pub fn of_degree(n: usize, d: u32) -> Vec<Exponents> {
        fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
            if cur.len() + 1 == n {
                cur.push(d);
                out.push(Exponents(cur.clone()));
                cur.pop();
                return;
            }
            for k in (0..=d).rev() {
                cur.push(k);
                rec(n, d - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Exponents(Vec::new()));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Number of exponent vectors of length `n` and degree `d`.
    pub fn count(n: usize, d: u32) -> u128 {
        if n == 0 {
            return u128::from(d == 0);
        }
        // C(d + n − 1, n − 1)
        let (mut num, mut den) = (1u128, 1u128);
        for k in 1..n as u128 {
            num *= u128::from(d) + k;
            den *= k;
        }
        num / den
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Renders `x^α a^β` as `x1^2*a2`; the empty monomial is `1`.
pub(crate) fn render(x: &[u32], a: &[u32]) -> String {
    let mut parts = Vec::new();
    for (sym, e) in [("x", x), ("a", a)] {
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("{sym}{}", i + 1)),
                _ => parts.push(format!("{sym}{}^{k}", i + 1)),
            }
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
