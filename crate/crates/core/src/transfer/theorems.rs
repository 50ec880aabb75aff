//! End-to-end checks: `Γ^j θ^{m,0}(ρ)` against the stable-range lifts of
//! `O(p,q)` in type C, the singular transfer `U(p,q) ⇝ U(p+r,q−r)` in type A,
//! and the sum over all degrees.

use serde::{Deserialize, Serialize};

use super::{gamma_j_spectrum, GammaJ, SplitFactor, TransferGeometry, TransferInput};
use crate::pairs::{build_seesaw, degree_j, degree_j0, rho_pq, stable_range, DualPairDescriptor, Family};
use crate::report::{BreakdownEntry, Check, Report};
use crate::spectra::{
    lowest_weight_m_spectrum, theta_character_spectrum, theta_restrict_to_h, CharacterDatum, LowestWeightModule,
};
use crate::weights::{rho, CharacterSeries, HalfInt, KTypeLabel};
use crate::{Error, Result};

/// Cutoff of the worked type C example.
pub const E1_EXAMPLE_CUTOFF: u32 = 8;

/// Input of a transfer check. `cutoff` bounds `|γ|₁` of the compared K̃₂-types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum TransferConfig {
    /// `Γ^j θ^{m,0}(det^ε)` for `(Sp(2n,R), O(m))`, `n = r+s`, through `U(r,s)`.
    E1 { family: Family, m: usize, r: usize, s: usize, eps: i64, j: usize, cutoff: u32 },
    /// `Γ^j θ_{p,q}(1)` for `(U(p,q), U(k))` through `U(p,r) × U(q−r)`.
    Ex2 { family: Family, p: usize, q: usize, k: usize, r: usize, cutoff: u32 },
}

fn half(k: i64) -> HalfInt {
    HalfInt::from_halves(k)
}

fn l1_rho(n: usize) -> HalfInt {
    rho(n).into_iter().fold(HalfInt::ZERO, |a, x| a + x.abs())
}

/// Fock degree up to which the inputs must be known so that every `γ` with
/// `|γ|₁ ≤ bound` in degrees `≤ j_max` is computed from complete data.
fn internal_cutoff(bound: u32, j_max: usize, rho_l1: HalfInt, offset: HalfInt) -> u32 {
    let slack = HalfInt::from_int(2 * j_max as i64).max(rho_l1.scale(2));
    let c = HalfInt::from_int(i64::from(bound)) + slack - offset;
    c.halves().div_euclid(2).max(0) as u32 + u32::from(c.halves() % 2 != 0)
}

/// Keeps the labels with `|γ|₁ ≤ bound` and declares them complete there.
fn clip(s: &CharacterSeries, bound: u32) -> CharacterSeries {
    s.restrict(|l| l.l1_norm() <= HalfInt::from_int(i64::from(bound))).with_horizon(bound)
}

/// The first-degree entry of a graded series.
fn lowest_label(s: &CharacterSeries) -> Option<KTypeLabel> {
    s.graded_entries()?.keys().next().map(|(_, l)| l.clone())
}

fn breakdown(g: &GammaJ) -> Vec<BreakdownEntry> {
    g.per_w
        .iter()
        .filter(|c| !c.gamma.is_empty())
        .map(|c| BreakdownEntry { j: g.j, w: c.w.to_string(), copies: c.copies, gamma: c.gamma.clone() })
        .collect()
}

fn config_json(cfg: &TransferConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("plain data")
}

/// Everything the type C checks share.
struct E1Setup {
    geom: TransferGeometry,
    inputs: Vec<TransferInput>,
    /// `(p, q, θ^{p,q}(ρ_{p,q}))` clipped to the bound.
    lifts: Vec<(usize, usize, CharacterSeries)>,
    r: usize,
    s: usize,
    bound: u32,
}

fn e1_setup(cfg: &TransferConfig, j_max: usize) -> Result<E1Setup> {
    let TransferConfig::E1 { family, m, r, s, eps, cutoff, .. } = *cfg else {
        return Err(Error::Precondition("not a type C transfer configuration".into()));
    };
    if family != Family::C {
        return Err(Error::Unsupported(format!("the transfer of characters is implemented for type C, got {family}")));
    }
    let n = r + s;
    if r == 0 || m == 0 {
        return Err(Error::Hypothesis(format!("r = {r} and m = {m} must be positive")));
    }
    let outer = DualPairDescriptor::sp_o(n, m, 0)?;
    if !stable_range(&outer) {
        return Err(Error::Hypothesis(format!("{outer} is not in the stable range")));
    }
    let inner = DualPairDescriptor::u_u(r, s, m, 0)?;
    let seesaw = build_seesaw(&outer, &inner)?;
    let datum = CharacterDatum::orthogonal(outer, eps, 0)?;

    let geom = TransferGeometry::new(vec![SplitFactor { a: r, b: s }]);
    let offset = half((m * n) as i64);
    let c_int = internal_cutoff(cutoff, j_max, l1_rho(n), offset);
    let mut inputs = Vec::new();
    for term in theta_restrict_to_h(&seesaw, &datum, c_int)? {
        let l = LowestWeightModule { compact_pair: inner, mu: term.mu.clone() };
        let m_series = lowest_weight_m_spectrum(&l, c_int)?;
        let Some(lowest) = lowest_label(&m_series) else { continue };
        inputs.push(TransferInput { name: format!("L({})", term.mu), lowest, m_series, weight: term.n_mu, offset });
    }

    let mut lifts = Vec::new();
    for p in 0..=r.min(m) {
        let q = m - p;
        if q > s {
            continue;
        }
        let chi = rho_pq(Family::C, eps, r as u32, s as u32, p as u32, q as u32)?;
        let d = CharacterDatum::orthogonal(DualPairDescriptor::sp_o(n, p, q)?, chi.xi.into(), chi.eta.into())?;
        let reach = cutoff + (n * p.abs_diff(q)).div_ceil(2) as u32;
        lifts.push((p, q, clip(&theta_character_spectrum(&d, reach)?, cutoff)));
    }
    Ok(E1Setup { geom, inputs, lifts, r, s, bound: cutoff })
}

/// `Γ^j θ^{m,0}(ρ) = ⊕_{j(p,q) = j} θ^{p,q}(ρ_{p,q})`, with the uniqueness of
/// the contributing summand `W_{p,q}` of `∧^j(h/m)`.
pub fn verify_theorem_e1(cfg: &TransferConfig) -> Result<Report> {
    let TransferConfig::E1 { j, .. } = *cfg else {
        return Err(Error::Precondition("not a type C transfer configuration".into()));
    };
    let setup = e1_setup(cfg, j)?;
    let (r, s) = (setup.r, setup.s);
    if j > 2 * r * s {
        return Err(Error::Precondition(format!("j = {j} exceeds dim h/m = {}", 2 * r * s)));
    }
    let gj = gamma_j_spectrum(&setup.inputs, &setup.geom, j, setup.bound)?;

    let mut rhs = CharacterSeries::new(setup.bound);
    let mut expected = Vec::new();
    for (p, q, lift) in &setup.lifts {
        if degree_j(Family::C, r as u32, s as u32, *p as u32, *q as u32)? == j as u64 {
            for (l, mult) in lift.iter() {
                rhs.add(l.clone(), mult);
            }
            expected.push((*p, *q, lift));
        }
    }

    let nonzero: Vec<_> = gj.per_w.iter().filter(|c| !c.gamma.is_empty()).collect();
    let mut checks = Vec::new();
    for (p, q, lift) in &expected {
        let hits: Vec<_> = nonzero.iter().filter(|c| c.gamma.difference(lift).is_empty()).collect();
        let passed = hits.len() == 1 && hits[0].copies == 1;
        let detail = match hits.as_slice() {
            [] => "no summand W reproduces it".to_string(),
            [c] => format!("W = {} with multiplicity {} in ∧^{j}", c.w, c.copies),
            many => format!("{} summands reproduce it", many.len()),
        };
        checks.push(Check::new(format!("unique W for θ^{{{p},{q}}}"), passed, detail));
    }
    let stray: Vec<String> = nonzero
        .iter()
        .filter(|c| !expected.iter().any(|(_, _, lift)| c.gamma.difference(lift).is_empty()))
        .map(|c| c.w.to_string())
        .collect();
    checks.push(Check::new(
        "other W vanish",
        stray.is_empty(),
        if stray.is_empty() { "none".to_string() } else { format!("nonzero for W = {}", stray.join(", ")) },
    ));
    let per_w = breakdown(&gj);
    Ok(Report::decide("theorem_e1", config_json(cfg), gj.total, rhs, per_w, checks))
}

/// `⊕_j Γ^j θ^{m,0}(ρ) = ⊕_{p+q=m} θ^{p,q}(ρ_{p,q})`.
pub fn euler_sum_check(cfg: &TransferConfig) -> Result<Report> {
    let TransferConfig::E1 { r, s, .. } = *cfg else {
        return Err(Error::Precondition("the degree sum is checked for type C configurations".into()));
    };
    let top = 2 * r * s;
    let setup = e1_setup(cfg, top)?;
    let mut lhs = CharacterSeries::new(setup.bound);
    let mut per_w = Vec::new();
    let mut degrees = Vec::new();
    for j in 0..=top {
        let gj = gamma_j_spectrum(&setup.inputs, &setup.geom, j, setup.bound)?;
        if !gj.total.is_empty() {
            degrees.push(j.to_string());
        }
        for (l, mult) in gj.total.iter() {
            lhs.add(l.clone(), mult);
        }
        per_w.extend(breakdown(&gj));
    }
    let mut rhs = CharacterSeries::new(setup.bound);
    for (_, _, lift) in &setup.lifts {
        for (l, mult) in lift.iter() {
            rhs.add(l.clone(), mult);
        }
    }
    let checks = vec![Check::new("nonzero degrees", true, degrees.join(","))];
    Ok(Report::decide("euler_sum", config_json(cfg), lhs, rhs, per_w, checks))
}

/// Singular transfer of `θ_{p,q}(1)` from `(U(p,q), U(k))` to `U(p+r, q−r)`:
/// vanishing outside the stable range and below `j₀ = kr`, the lift at `j₀`,
/// and whole multiples of it above.
pub fn verify_theorem_ex2(cfg: &TransferConfig) -> Result<Report> {
    let TransferConfig::Ex2 { family, p, q, k, r, cutoff } = *cfg else {
        return Err(Error::Precondition("not a singular transfer configuration".into()));
    };
    if family != Family::A {
        return Err(Error::Unsupported(format!("singular transfer is implemented for type A, got {family}")));
    }
    if (p + q) % 2 != 0 || r == 0 || r >= q {
        return Err(Error::Hypothesis(format!("need p+q even and 0 < r < q, got p={p}, q={q}, r={r}")));
    }
    let target = DualPairDescriptor::u_u(p + r, q - r, k, 0)?;
    let inner = DualPairDescriptor::u_u(p, r, k, 0)?;
    let f = q - r;
    let geom = TransferGeometry::new(vec![SplitFactor { a: p, b: r }, SplitFactor { a: 0, b: f }]);
    let top = geom.dim();
    let offset = half((k * (p + q)) as i64);
    let c_int = internal_cutoff(cutoff, top, l1_rho(p + r) + l1_rho(f), offset);

    // θ_{p,q}(1)|_{U(p,r)×U(f)} = ⊕_β L(β + (p−r)/2) ⊠ (−rev β − k/2).
    let mut inputs = Vec::new();
    for size in 0..=c_int {
        for beta in crate::weights::partitions_of(size, f.min(k)) {
            let mu: Vec<HalfInt> =
                beta.padded(k).iter().map(|&b| HalfInt::from_int(i64::from(b)) + half(p as i64 - r as i64)).collect();
            let mu = KTypeLabel::unitary(&[mu])?;
            let l1 = lowest_weight_m_spectrum(&LowestWeightModule { compact_pair: inner, mu: mu.clone() }, c_int - size)?;
            let f_block: Vec<HalfInt> =
                beta.padded(f).iter().rev().map(|&b| -HalfInt::from_int(i64::from(b)) - half(k as i64)).collect();
            let f_label = KTypeLabel::unitary(&[f_block])?;
            let mut m_series = CharacterSeries::graded(c_int);
            for ((d, l), mult) in l1.graded_entries().expect("graded") {
                let mut factors = l.factors.clone();
                factors.extend(f_label.factors.iter().cloned());
                m_series.add_graded(d + size, KTypeLabel::new(factors), *mult);
            }
            let Some(lowest) = lowest_label(&m_series) else { continue };
            inputs.push(TransferInput { name: format!("L({mu})⊠{f_label}"), lowest, m_series, weight: 1, offset });
        }
    }

    let spectra = (0..=top).map(|j| gamma_j_spectrum(&inputs, &geom, j, cutoff)).collect::<Result<Vec<_>>>()?;
    let nonzero: Vec<String> = spectra.iter().filter(|g| !g.total.is_empty()).map(|g| g.j.to_string()).collect();
    let per_w = spectra.iter().flat_map(breakdown).collect();
    let j0 = degree_j0(Family::A, k as u32, r as u32) as usize;

    if !stable_range(&target) {
        let mut lhs = CharacterSeries::new(cutoff);
        for g in &spectra {
            for (l, mult) in g.total.iter() {
                lhs.add(l.clone(), mult);
            }
        }
        let checks = vec![Check::new(
            "vanishing outside the stable range",
            lhs.is_empty(),
            format!("{target} is outside the stable range; nonzero degrees: [{}]", nonzero.join(",")),
        )];
        return Ok(Report::decide("theorem_ex2", config_json(cfg), lhs, CharacterSeries::new(cutoff), per_w, checks));
    }

    // `U(k)` is the same group before and after the transfer, so the target
    // lift is of the character with the source's weight `(p−q)/2`, which is
    // `det^{−r}` against the canonical one of the target pair.
    let chi = CharacterDatum::unitary(target, -(r as i64))?;
    let rhs = clip(&theta_character_spectrum(&chi, cutoff)?, cutoff);
    let empty = CharacterSeries::new(cutoff);
    let lhs = spectra.get(j0).map_or(empty, |g| g.total.clone());
    let below: Vec<String> =
        spectra.iter().take(j0).filter(|g| !g.total.is_empty()).map(|g| g.j.to_string()).collect();
    let mut checks = vec![Check::new(
        "vanishing below j0",
        below.is_empty(),
        if below.is_empty() { format!("j0 = {j0}") } else { format!("nonzero at j = {}", below.join(",")) },
    )];
    for g in spectra.iter().skip(j0 + 1) {
        let (passed, detail) = match copy_count(&g.total, &rhs) {
            Some(c) => (true, format!("{c} copies")),
            None => (false, "not a whole multiple of the j0 lift".to_string()),
        };
        checks.push(Check::new(format!("multiple at j = {}", g.j), passed, detail));
    }
    Ok(Report::decide("theorem_ex2", config_json(cfg), lhs, rhs, per_w, checks))
}

/// `c` with `s = c·unit`, if it exists.
fn copy_count(s: &CharacterSeries, unit: &CharacterSeries) -> Option<u64> {
    if s.is_empty() {
        return Some(0);
    }
    let (l0, m0) = unit.iter().next()?;
    let c = s.get(l0) / m0;
    let ok = s.labels().chain(unit.labels()).all(|l| s.get(l) == c * unit.get(l));
    ok.then_some(c)
}
