//! The two transfer tables as rows of data, evaluated over a grid.

use serde::Serialize;
use theta_core::pairs::{degree_j, degree_j0, stable_range, DualPairDescriptor, Family, RealGroup};
use theta_core::Result;

/// One `(r, s, p, q)` entry of the unitary highest weight table.
#[derive(Debug, Clone, Serialize)]
pub struct HighestWeightRow {
    pub family: String,
    pub g: String,
    pub g_prime: String,
    pub h: String,
    pub n: u32,
    pub r: u32,
    pub s: u32,
    pub p: u32,
    pub q: u32,
    pub stable_range: &'static str,
    pub in_stable_range: bool,
    pub j_formula: &'static str,
    pub j: u64,
}

/// One `(n, r)` entry of the singular transfer table.
#[derive(Debug, Clone, Serialize)]
pub struct SingularRow {
    pub family: String,
    pub g: &'static str,
    pub g_prime: String,
    pub n: u32,
    pub r: u32,
    pub stable_range: &'static str,
    pub j0_formula: &'static str,
    pub j0: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tables {
    pub kind: &'static str,
    pub highest_weight: Vec<HighestWeightRow>,
    pub singular: Vec<SingularRow>,
}

/// Grid filter: families to include, optional fixed `r` and `s`, and the bound on `r`, `s` and `n`.
#[derive(Debug, Clone)]
pub struct Grid {
    pub families: Vec<Family>,
    pub r: Option<u32>,
    pub s: Option<u32>,
    pub max: u32,
}

fn outer(family: Family, n: u32, p: u32, q: u32) -> Result<DualPairDescriptor> {
    let (n, p, q) = (n as usize, p as usize, q as usize);
    match family {
        Family::A => DualPairDescriptor::u_u(n, n, p, q),
        Family::C => DualPairDescriptor::sp_o(n, p, q),
        Family::D => DualPairDescriptor::new(Family::D, RealGroup::OStar { n }, RealGroup::SpQ { p, q }),
    }
}

pub fn highest_weight_table(grid: &Grid) -> Result<Vec<HighestWeightRow>> {
    let mut rows = Vec::new();
    for &family in &grid.families {
        let scale = if family == Family::D { 2 } else { 1 };
        for r in 0..=grid.max {
            for s in 0..=grid.max {
                let n = r + s;
                if n == 0 || n > grid.max || grid.r.is_some_and(|x| x != r) || grid.s.is_some_and(|x| x != s) {
                    continue;
                }
                for p in 0..=r / scale {
                    for q in 0..=s / scale {
                        if p + q == 0 {
                            continue;
                        }
                        let (g, g_prime, h) = match family {
                            Family::A => (format!("U({n},{n})"), format!("U({p},{q})"), format!("U({r},{s})xU({s},{r})")),
                            Family::C => (format!("Sp({},R)", 2 * n), format!("O({p},{q})"), format!("U({r},{s})")),
                            Family::D => (format!("O*({})", 2 * n), format!("Sp({p},{q})"), format!("U({r},{s})")),
                        };
                        rows.push(HighestWeightRow {
                            family: family.to_string(),
                            g,
                            g_prime,
                            h,
                            n,
                            r,
                            s,
                            p,
                            q,
                            stable_range: if family == Family::D { "n>=2(p+q)" } else { "n>=p+q" },
                            in_stable_range: stable_range(&outer(family, n, p, q)?),
                            j_formula: match family {
                                Family::A => "rs-(r-p)(s-q)",
                                Family::C => "2(rs-(r-p)(s-q))",
                                Family::D => "rs-(r-2p)(s-2q)",
                            },
                            j: degree_j(family, r, s, p, q)?,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn singular_table(grid: &Grid) -> Vec<SingularRow> {
    let mut rows = Vec::new();
    for &family in &grid.families {
        for n in 1..=grid.max {
            for r in 1..=grid.max {
                if grid.r.is_some_and(|x| x != r) {
                    continue;
                }
                let (g, g_prime, stable, formula) = match family {
                    Family::A => ("U(p,q)", format!("U(n1,n2),n1+n2={n}"), "p,q>=n1+n2", "(n1+n2)r"),
                    Family::C => ("Sp(p,q)", format!("O*({})", 2 * n), "p,q>=n", "2nr"),
                    Family::D => ("O(p,q)", format!("Sp({},R)", 2 * n), "p,q>=2n and max(p,q)>2n", "nr"),
                };
                rows.push(SingularRow {
                    family: family.to_string(),
                    g,
                    g_prime,
                    n,
                    r,
                    stable_range: stable,
                    j0_formula: formula,
                    j0: degree_j0(family, n, r),
                });
            }
        }
    }
    rows
}

pub fn tables(grid: &Grid) -> Result<Tables> {
    Ok(Tables { kind: "tables", highest_weight: highest_weight_table(grid)?, singular: singular_table(grid) })
}
