use std::collections::BTreeMap;

use serde::Serialize;

use super::invariants::{invariant_polynomials, SymPoly};
use super::spans::{xi_witness, SeesawInvariants};
use super::SliceSpec;
use crate::algebra::GaussianRational as GR;
use crate::fock::{
    act_on_fock, isotypic_decompose, isotypic_decompose_constrained, operator_matrix_into, restricted_kernel,
    FockVector, GradedSlice, WeylElement,
};
use crate::pairs::{build_seesaw, DualPairDescriptor, SeesawConfig};
use crate::report::{Check, Verdict};
use crate::spectra::{character_constraints, CharacterDatum};
use crate::weights::KTypeLabel;
use crate::{Error, Result};

/// How `ω(x)` acts on a list of vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// Every vector is an eigenvector with this one eigenvalue.
    Scalar(GR),
    /// Some vector is not an eigenvector, or two eigenvalues differ.
    NotScalar,
}

/// `Some(c)` if `x·v = c·v`.
fn eigenvalue(x: &WeylElement, v: &FockVector) -> Result<Option<GR>> {
    let w = act_on_fock(x, v)?;
    let Some((e, cv)) = v.terms().next() else { return Ok(Some(GR::zero())) };
    let c = &w.coefficient(e) * &cv.inv().expect("nonzero coefficient");
    Ok((w == v.scale(&c)).then_some(c))
}

fn common_eigenvalue<'a>(x: &WeylElement, vs: impl IntoIterator<Item = &'a FockVector>) -> Result<Action> {
    let mut seen: Option<GR> = None;
    for v in vs {
        match (eigenvalue(x, v)?, &seen) {
            (None, _) => return Ok(Action::NotScalar),
            (Some(c), Some(s)) if &c != s => return Ok(Action::NotScalar),
            (Some(c), _) => seen = Some(c),
        }
    }
    Ok(seen.map_or(Action::NotScalar, Action::Scalar))
}

/// The part of `x` that changes the Fock degree by `sign·2`.
fn shift_part(x: &WeylElement, sign: i64) -> WeylElement {
    let n = x.n_pairs();
    let mut out = WeylElement::zero(n);
    for (m, c) in x.terms() {
        let shift = i64::from(m.0[..n].iter().sum::<u32>()) - i64::from(m.0[n..].iter().sum::<u32>());
        if shift.signum() == sign {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarEntry {
    pub x: SymPoly,
    /// Action on the multiplicity space, degree by degree.
    pub by_degree: BTreeMap<u32, Action>,
    /// Action on the images of the multiplicity space under the raising part of `h`.
    pub raised: Action,
    pub scalar: Action,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarActionReport {
    pub kind: &'static str,
    pub config: serde_json::Value,
    pub tau: String,
    pub k: u32,
    pub slice: SliceSpec,
    /// Dimension of the multiplicity space in each Fock degree where it is nonzero.
    pub multiplicity_space: BTreeMap<u32, usize>,
    pub entries: Vec<ScalarEntry>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

/// Lowest-`τ` vectors of the `ρ`-isotypic Fock truncation: `M̃`-highest
/// weight vectors of type `τ` on which `g′` acts by `dρ` and which the
/// lowering part of `h` kills. On them every element of `U(g)^{H̃}` up to
/// filtration `k` must act by a scalar, the same one in every degree.
pub fn verify_scalar_action(
    saw: &SeesawConfig,
    rho: &CharacterDatum,
    tau: &KTypeLabel,
    k: u32,
    slice: SliceSpec,
) -> Result<ScalarActionReport> {
    if rho.pair != saw.outer.descriptor {
        return Err(Error::Precondition(format!("ρ lives on {}, the see-saw on {}", rho.pair, saw.outer.descriptor)));
    }
    if !rho.pair.groups[1].is_compact() {
        return Err(Error::Unsupported(format!("scalar action needs a compact {}", rho.pair.groups[1])));
    }
    let n = saw.outer.n_vars();
    let sl = slice.build(n)?;
    let constraints = character_constraints(rho, &saw.outer)?;
    let lowering: Vec<WeylElement> =
        saw.inner.g.generators.iter().map(|h| shift_part(h, -1)).filter(|x| !x.is_zero()).collect();
    let raising: Vec<WeylElement> =
        saw.inner.g.generators.iter().map(|h| shift_part(h, 1)).filter(|x| !x.is_zero()).collect();

    let mut space: BTreeMap<u32, Vec<FockVector>> = BTreeMap::new();
    for c in isotypic_decompose_constrained(&saw.inner.g.group_meta, &constraints, &sl)? {
        if &c.label != tau {
            continue;
        }
        let deg = GradedSlice::new(n, c.degree, c.degree);
        let coords: Vec<_> = c.highest_weight_vectors.iter().filter_map(|v| v.coordinates(&deg)).collect();
        let ops = lowering.iter().map(|x| operator_matrix_into(x, &deg, &deg.widened(2))).collect::<Result<Vec<_>>>()?;
        let kept = restricted_kernel(&ops, &coords, deg.dim());
        if !kept.is_empty() {
            space.insert(c.degree, kept.iter().map(|v| FockVector::from_coordinates(&deg, v)).collect());
        }
    }

    let mut entries = Vec::new();
    let invariants = SeesawInvariants { saw }.g_side(k)?;
    for x in invariants.into_iter().filter(|p| p.degree() > 0) {
        let wx = x.omega(n, &saw.outer.g.generators)?;
        let mut by_degree = BTreeMap::new();
        for (&d, vs) in &space {
            by_degree.insert(d, common_eigenvalue(&wx, vs)?);
        }
        let mut pushed = Vec::new();
        for v in space.values().flatten() {
            for e in &raising {
                let u = act_on_fock(e, v)?;
                if !u.is_zero() {
                    pushed.push(u);
                }
            }
        }
        let raised = common_eigenvalue(&wx, space.values().flatten().chain(&pushed))?;
        let mut all = by_degree.values().cloned().collect::<Vec<_>>();
        all.dedup();
        let scalar = match (all.as_slice(), &raised) {
            ([Action::Scalar(c)], Action::Scalar(r)) if c == r => raised.clone(),
            _ => Action::NotScalar,
        };
        entries.push(ScalarEntry { x, by_degree, raised, scalar });
    }

    let multiplicity_space: BTreeMap<u32, usize> = space.iter().map(|(&d, vs)| (d, vs.len())).collect();
    let found = !space.is_empty();
    let per_degree = entries.iter().all(|e| e.by_degree.values().all(|a| matches!(a, Action::Scalar(_))));
    let independent = entries.iter().all(|e| matches!(e.scalar, Action::Scalar(_)));
    let checks = vec![
        Check::new("multiplicity space found", found, format!("{multiplicity_space:?}")),
        Check::new("scalar in each degree", per_degree, format!("{} invariants tested", entries.len())),
        Check::new("degree independent", independent, "same scalar after raising and across degrees"),
    ];
    let verdict = match (found, per_degree && independent) {
        (false, _) => Verdict::Inconclusive,
        (true, true) => Verdict::Match,
        (true, false) => Verdict::Mismatch,
    };
    Ok(ScalarActionReport {
        kind: "scalar_action",
        config: serde_json::json!({
            "outer": saw.outer.descriptor.to_string(),
            "inner": saw.inner.descriptor.to_string(),
            "rho": rho,
        }),
        tau: tau.to_string(),
        k,
        slice,
        multiplicity_space,
        entries,
        checks,
        verdict,
    })
}

/// Action of one central element on the `G′`-isotypic pieces of Fock space.
#[derive(Debug, Clone, Serialize)]
pub struct CentralEntry {
    pub z: SymPoly,
    pub witness: Option<SymPoly>,
    pub out_of_sample: bool,
    /// `G′`-type to the action of `ω(z)` on its highest weight vectors.
    pub pieces: BTreeMap<String, Action>,
    /// All pieces see one and the same scalar.
    pub shared: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InfcharReport {
    pub kind: &'static str,
    pub config: serde_json::Value,
    pub k_prime: u32,
    pub slice: SliceSpec,
    pub entries: Vec<CentralEntry>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

/// For each generator `z` of `Z(g)` up to filtration 2, its witness in
/// `Z(g′)` through the degenerate see-saw and the scalar by which it acts on
/// every `G′`-isotypic piece of the slice: the correspondence of
/// infinitesimal characters, read off as numbers.
pub fn verify_infchar_correspondence(pair: &DualPairDescriptor, k_prime: u32, slice: SliceSpec) -> Result<InfcharReport> {
    if !pair.groups[1].is_compact() {
        return Err(Error::Unsupported(format!("isotypic pieces need a compact {}", pair.groups[1])));
    }
    let saw = build_seesaw(pair, pair)?;
    let g = &saw.outer.g;
    let n = saw.outer.n_vars();
    let sl = slice.build(n)?;
    let components = isotypic_decompose(&saw.outer.g_prime.group_meta, &sl)?;
    let mut entries = Vec::new();
    for z in invariant_polynomials(g, &g.generators, &g.group_meta.involutions, 2)? {
        let (witness, out_of_sample) = match xi_witness(&saw, &z, k_prime, slice) {
            Ok(w) => (Some(w.output), w.out_of_sample),
            Err(Error::NoWitness(_)) => (None, false),
            Err(e) => return Err(e),
        };
        let wz = z.omega(n, &g.generators)?;
        let mut grouped: BTreeMap<String, Vec<&FockVector>> = BTreeMap::new();
        for c in &components {
            grouped.entry(c.label.to_string()).or_default().extend(&c.highest_weight_vectors);
        }
        let pieces: BTreeMap<String, Action> = grouped
            .into_iter()
            .map(|(l, vs)| Ok((l, common_eigenvalue(&wz, vs)?)))
            .collect::<Result<_>>()?;
        let mut values: Vec<&Action> = pieces.values().collect();
        values.dedup();
        let shared = values.len() == 1 && matches!(values[0], Action::Scalar(_));
        entries.push(CentralEntry { z, witness, out_of_sample, pieces, shared });
    }
    let round_trip = entries.iter().all(|e| e.witness.is_some() && e.out_of_sample);
    let scalar = entries.iter().all(|e| e.pieces.values().all(|a| matches!(a, Action::Scalar(_))));
    let checks = vec![
        Check::new("witness round-trip", round_trip, format!("{} central elements", entries.len())),
        Check::new("scalar on each piece", scalar, format!("{} pieces", components.len())),
    ];
    Ok(InfcharReport {
        kind: "infchar",
        config: serde_json::json!({ "pair": pair.to_string() }),
        k_prime,
        slice,
        entries,
        checks,
        verdict: if round_trip && scalar { Verdict::Match } else { Verdict::Mismatch },
    })
}
