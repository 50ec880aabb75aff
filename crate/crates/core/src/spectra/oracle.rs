use super::CharacterDatum;
use crate::algebra::GaussianRational as GR;
use crate::fock::{isotypic_decompose_constrained, CompactAction, CompactFactor, Constraints, GradedSlice};
use crate::pairs::{build_pair, BuiltPair, RealGroup};
use crate::weights::CharacterSeries;
use crate::{Error, Result};

/// Largest truncated Fock space the brute-force paths accept, in monomials.
pub const ORACLE_GUARD: usize = 20000;

pub(crate) fn guard(n_vars: usize, cutoff: u32) -> Result<GradedSlice> {
    let size = GradedSlice::size(n_vars, 0, cutoff);
    if size > ORACLE_GUARD as u128 {
        return Err(Error::GuardExceeded { what: "Fock monomials", size: size as usize, limit: ORACLE_GUARD });
    }
    Ok(GradedSlice::new(n_vars, 0, cutoff))
}

/// `a × b` acting on the same Fock space; `b`'s involution indices are shifted.
pub fn product_action(a: &CompactAction, b: &CompactAction) -> CompactAction {
    let offset = a.involutions.len();
    let shifted = b.factors.iter().map(|f| match *f {
        CompactFactor::Orthogonal { n, involution } => CompactFactor::Orthogonal { n, involution: involution + offset },
        CompactFactor::Unitary { rank } => CompactFactor::Unitary { rank },
    });
    CompactAction {
        n_vars: a.n_vars,
        factors: a.factors.iter().cloned().chain(shifted).collect(),
        torus: a.torus.iter().chain(&b.torus).cloned().collect(),
        raising: a.raising.iter().chain(&b.raising).cloned().collect(),
        lowering: a.lowering.iter().chain(&b.lowering).cloned().collect(),
        involutions: a.involutions.iter().chain(&b.involutions).cloned().collect(),
    }
}

/// Brute-force K̃-spectrum of `Θ(ρ)` for compact `G′`: the ρ-isotypic part of
/// each Fock degree (g′ acting by `dρ`, reflections by the signs of ρ),
/// decomposed under the maximal compact subgroup of `G`.
pub fn theta_spectrum_oracle(d: &CharacterDatum, cutoff: u32) -> Result<CharacterSeries> {
    if !d.pair.groups[1].is_compact() {
        return Err(Error::Unsupported(format!("oracle needs a compact smaller member, got {}", d.pair)));
    }
    let slice = guard(d.pair.fock_vars(), cutoff)?;
    let pair = build_pair(&d.pair)?;
    let constraints = character_constraints(d, &pair)?;
    let mut out = CharacterSeries::graded(cutoff);
    for c in isotypic_decompose_constrained(&pair.g.group_meta, &constraints, &slice)? {
        out.add_graded(c.degree, c.label, c.multiplicity as u64);
    }
    Ok(out)
}

/// Conditions cutting the `ρ`-isotypic part out of Fock space: `g′` acting by
/// `dρ` and the reflections of `G′` by the signs of `ρ`.
pub(crate) fn character_constraints(d: &CharacterDatum, pair: &BuiltPair) -> Result<Constraints> {
    let meta = &pair.g_prime.group_meta;
    let mut constraints = Constraints::default();
    match d.pair.groups[1] {
        RealGroup::O { .. } => {
            let chi = d.parity.ok_or_else(|| Error::MissingData("parity of the O(p,q) character".into()))?;
            for g in &pair.g_prime.generators {
                constraints.eigen.push((g.clone(), GR::zero()));
            }
            // The factors of a compact O(p,q) are O(p) then O(q), zero sizes omitted.
            let signs = [(chi.p, chi.xi), (chi.q, chi.eta)];
            let mut sizes = signs.iter().filter(|(n, _)| *n > 0);
            for f in &meta.factors {
                if let CompactFactor::Orthogonal { involution, .. } = *f {
                    let &(_, e) = sizes.next().expect("one sign per orthogonal factor");
                    constraints.involutions.push((meta.involutions[involution].clone(), if e == 0 { 1 } else { -1 }));
                }
            }
        }
        RealGroup::U { .. } => {
            let RealGroup::U { p, q } = d.pair.groups[0] else { unreachable!("validated") };
            let k = pair.g_prime.group_meta.torus.len();
            let scalar = GR::from_frac(p as i64 - q as i64 + 2 * d.det_power, 2);
            for (idx, g) in pair.g_prime.generators.iter().enumerate() {
                let diag = idx / k == idx % k;
                constraints.eigen.push((g.clone(), if diag { scalar.clone() } else { GR::zero() }));
            }
        }
        _ => return Err(Error::Unsupported(format!("oracle for {}", d.pair))),
    }
    Ok(constraints)
}

#[cfg(test)]
mod tests {
    use super::super::theta_character_spectrum;
    use super::*;
    use crate::pairs::DualPairDescriptor;

    fn datum(s: &str, xi: i64) -> CharacterDatum {
        let pair: DualPairDescriptor = s.parse().unwrap();
        if matches!(pair.groups[1], RealGroup::O { .. }) {
            CharacterDatum::orthogonal(pair, xi, 0).unwrap()
        } else {
            CharacterDatum::trivial(pair)
        }
    }

    #[test]
    fn agrees_on_small_pairs() {
        for (s, xi, cutoff) in [("C:sp(2)/o(1)", 0, 8), ("C:sp(2)/o(1)", 1, 8), ("C:sp(2)/o(2)", 0, 6), ("A:u(1,1)/u(1)", 0, 6)] {
            let d = datum(s, xi);
            let fast = theta_character_spectrum(&d, cutoff).unwrap();
            let slow = theta_spectrum_oracle(&d, cutoff).unwrap();
            assert!(fast.difference(&slow).is_empty(), "{s} ξ={xi}: {fast:?} vs {slow:?}");
        }
    }

    #[test]
    fn twisted_unitary_characters_agree() {
        for (s, t) in [("A:u(2,1)/u(1)", 1), ("A:u(2,1)/u(1)", -1), ("A:u(3,1)/u(1)", -1), ("A:u(2,2)/u(2)", 1)] {
            let d = CharacterDatum::unitary(s.parse().unwrap(), t).unwrap();
            let fast = theta_character_spectrum(&d, 5).unwrap();
            let slow = theta_spectrum_oracle(&d, 5).unwrap();
            assert!(!fast.is_empty(), "{s} det^{t}");
            assert!(fast.difference(&slow).is_empty(), "{s} det^{t}: {fast:?} vs {slow:?}");
        }
    }

    #[test]
    fn vacuum_and_empty_cases() {
        let s = theta_spectrum_oracle(&datum("C:sp(2)/o(1)", 0), 0).unwrap();
        assert_eq!(s.iter().map(|(l, m)| format!("{l}:{m}")).collect::<Vec<_>>(), ["1/2:1"]);
        assert!(theta_spectrum_oracle(&datum("C:sp(2)/o(1)", 1), 0).unwrap().is_empty());
    }

    #[test]
    fn guard_and_noncompact_refusals() {
        assert!(matches!(theta_spectrum_oracle(&datum("C:sp(8)/o(3)", 0), 8), Err(Error::GuardExceeded { .. })));
        assert!(matches!(theta_spectrum_oracle(&datum("C:sp(4)/o(1,1)", 0), 2), Err(Error::Unsupported(_))));
    }
}
