use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use super::Partition;

type Key = (Partition, Partition, Partition);

fn cache() -> &'static Mutex<HashMap<Key, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Littlewood–Richardson coefficient `c^λ_{μν}`: the number of LR tableaux of
/// skew shape `λ/μ` and content `ν`.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.size() != mu.size() + nu.size() || !lam.contains(mu) || !lam.contains(nu) {
        return 0;
    }
    if mu.is_empty() || nu.is_empty() {
        return 1;
    }
    let key = (lam.clone(), mu.clone(), nu.clone());
    if let Some(&c) = cache().lock().expect("lr cache poisoned").get(&key) {
        return c;
    }
    let c = count_tableaux(lam, mu, nu);
    cache().lock().expect("lr cache poisoned").insert(key, c);
    c
}

struct Filling<'a> {
    lam: &'a Partition,
    mu: &'a Partition,
    nu: &'a Partition,
    /// `grid[row][col]`, zero for cells outside the skew shape.
    grid: Vec<Vec<u32>>,
    counts: Vec<u32>,
}

impl Filling<'_> {
    // Cells are visited in reverse reading order: rows top to bottom, each
    // row right to left, so the lattice condition can be checked on the fly.
    fn fill(&mut self, row: usize, col: Option<usize>) -> u64 {
        let (row, col) = match col {
            Some(c) => (row, c),
            None => {
                let next = row + 1;
                if next >= self.lam.len() {
                    return 1;
                }
                let start = self.lam.part(next) as usize;
                let stop = self.mu.part(next) as usize;
                if start == stop {
                    return self.fill(next, None);
                }
                (next, start - 1)
            }
        };
        let left_edge = self.mu.part(row) as usize;
        let upper_bound = if col + 1 < self.lam.part(row) as usize { self.grid[row][col + 1] } else { u32::MAX };
        let lower_bound = if row > 0 && col >= self.mu.part(row - 1) as usize { self.grid[row - 1][col] + 1 } else { 1 };
        let mut total = 0;
        for v in lower_bound..=upper_bound.min(self.nu.len() as u32) {
            let k = (v - 1) as usize;
            if self.counts[k] >= self.nu.part(k) {
                continue;
            }
            if k > 0 && self.counts[k] + 1 > self.counts[k - 1] {
                continue;
            }
            self.counts[k] += 1;
            self.grid[row][col] = v;
            let next = if col > left_edge { Some(col - 1) } else { None };
            total += self.fill(row, next);
            self.grid[row][col] = 0;
            self.counts[k] -= 1;
        }
        total
    }
}

fn count_tableaux(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let mut f = Filling {
        lam,
        mu,
        nu,
        grid: (0..lam.len()).map(|r| vec![0; lam.part(r) as usize]).collect(),
        counts: vec![0; nu.len()],
    };
    // Find the first row with cells and start at its rightmost cell.
    let first = (0..lam.len()).find(|&r| lam.part(r) > mu.part(r));
    match first {
        None => 1,
        Some(r) => {
            // Rows above `r` are empty; `fill(r-1, None)` would jump to `r`.
            f.fill(r, Some(lam.part(r) as usize - 1))
        }
    }
}

/// Expansion of `s_μ · s_ν` restricted to partitions with at most `max_len` parts.
pub fn lr_products(mu: &Partition, nu: &Partition, max_len: usize) -> BTreeMap<Partition, u64> {
    let size = mu.size() + nu.size();
    let width = mu.part(0) + nu.part(0);
    let mut out = BTreeMap::new();
    for lam in super::partitions_within(size, max_len, width) {
        if !lam.contains(mu) || !lam.contains(nu) {
            continue;
        }
        let c = lr_coefficient(&lam, mu, nu);
        if c > 0 {
            out.insert(lam, c);
        }
    }
    out
}
