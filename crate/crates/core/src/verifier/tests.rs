use super::*;
use crate::algebra::GaussianRational as GR;
use crate::pairs::{build_pair, build_seesaw, SeesawConfig};
use crate::report::Verdict;

fn pair(s: &str) -> crate::pairs::BuiltPair {
    build_pair(&s.parse().unwrap()).unwrap()
}

fn saw(outer: &str, inner: &str) -> SeesawConfig {
    build_seesaw(&outer.parse().unwrap(), &inner.parse().unwrap()).unwrap()
}

#[test]
fn howe_image_for_sl2_with_a_sign() {
    let p = pair("C:sp(2)/o(1)");
    let r = verify_howe_image(&p, 1).unwrap();
    assert_eq!((r.relation, r.lhs_dim, r.rhs_dim), (SpanVerdict::Equal, 4, 4));
    let r0 = verify_howe_image(&p, 0).unwrap();
    assert_eq!((r0.relation, r0.lhs_dim), (SpanVerdict::Equal, 1));
    assert_eq!(verify_howe_image(&p, 2).unwrap().relation, SpanVerdict::Equal);
}

#[test]
fn howe_image_for_unitary_pairs() {
    let r = verify_howe_image(&pair("A:u(1,1)/u(1)"), 1).unwrap();
    assert_eq!(r.relation, SpanVerdict::Equal, "{r:?}");
    assert_eq!(r.verdict, Verdict::Match);
}

#[test]
fn howe_image_notices_a_missing_reflection() {
    // Without the O(1) sign, odd elements like x are invariant but not in ω(U(sl2)).
    let mut p = pair("C:sp(2)/o(1)");
    p.g_prime.group_meta.involutions.clear();
    let r = verify_howe_image(&p, 1).unwrap();
    assert_eq!(r.relation, SpanVerdict::LhsInRhs);
    assert_eq!(r.verdict, Verdict::Mismatch);
    assert!(!r.rhs_outside_lhs.is_empty());
}

#[test]
fn invariants_of_sl2_are_polynomials_in_the_casimir() {
    let p = pair("C:sp(2)/o(1)");
    let basis = invariant_polynomials(&p.g, &p.g.generators, &[], 4).unwrap();
    let degrees: Vec<u32> = basis.iter().map(SymPoly::degree).collect();
    assert_eq!(degrees, [0, 2, 4]);
}

#[test]
fn degenerate_seesaw_spans_agree() {
    let s = saw("C:sp(2)/o(1)", "C:sp(2)/o(1)");
    for k in 0..=2 {
        let r = verify_ugk_spans(&s, k, k, SliceSpec::new(0, 6)).unwrap();
        assert_eq!(r.relation, SpanVerdict::Equal, "k={k}: {r:?}");
        assert_eq!(r.verdict, Verdict::Match);
    }
}

#[test]
fn proper_seesaw_spans_contain_each_other_with_slack() {
    let s = saw("C:sp(4)/o(1)", "A:u(1,1)/u(1)");
    let r = verify_ugk_spans(&s, 2, 2, SliceSpec::new(0, 6)).unwrap();
    assert_eq!(r.verdict, Verdict::Match, "{r:?}");
    let r0 = verify_ugk_spans(&s, 0, 0, SliceSpec::new(0, 6)).unwrap();
    assert_eq!((r0.relation, r0.lhs_dim), (SpanVerdict::Equal, 1));
}

#[test]
fn witness_of_one_is_one() {
    let s = saw("C:sp(2)/o(1)", "C:sp(2)/o(1)");
    let one = SymPoly::one(&s.outer.g.labels);
    let w = xi_witness(&s, &one, 1, SliceSpec::new(0, 4)).unwrap();
    assert_eq!(w.output, SymPoly::one(&s.inner.g_prime.labels));
    assert!(w.residual_zero && w.out_of_sample && w.exact);
}

#[test]
fn witness_of_the_casimir_is_central() {
    let s = saw("C:sp(4)/o(1)", "A:u(1,1)/u(1)");
    let x = invariant_polynomials(&s.outer.g, &s.inner.g.generators, &[], 2)
        .unwrap()
        .into_iter()
        .find(|p| p.degree() == 2)
        .expect("a quadratic invariant");
    let w = xi_witness(&s, &x, 2, SliceSpec::new(0, 4)).unwrap();
    assert!(w.residual_zero && w.out_of_sample, "{w:?}");
}

#[test]
fn witness_refuses_non_invariants_and_reports_missing_degree() {
    let s = saw("C:sp(4)/o(1)", "A:u(1,1)/u(1)");
    let labels = &s.outer.g.labels;
    let mut x = SymPoly::one(labels);
    x.terms.clear();
    x.terms.insert(crate::fock::Exponents::unit(labels.len(), 0), GR::one());
    let non_invariant = s.inner.g.generators.iter().any(|h| !h.bracket(&s.outer.g.generators[0]).unwrap().is_zero());
    if non_invariant {
        assert!(matches!(xi_witness(&s, &x, 2, SliceSpec::new(0, 4)), Err(crate::Error::Precondition(_))));
    }
    let quadratic = invariant_polynomials(&s.outer.g, &s.inner.g.generators, &[], 2)
        .unwrap()
        .into_iter()
        .find(|p| p.degree() == 2 && p.terms.keys().all(|e| e.degree() == 2))
        .unwrap();
    let found = xi_witness(&s, &quadratic, 0, SliceSpec::new(0, 4));
    assert!(matches!(found, Err(crate::Error::NoWitness(0))), "{found:?}");
}


fn vacuum_type(s: &SeesawConfig) -> crate::weights::KTypeLabel {
    let w = s.inner.g.vacuum_weight().unwrap();
    let mut blocks = Vec::new();
    let mut at = 0;
    for f in &s.inner.g.group_meta.factors {
        let len = f.torus_len();
        blocks.push(w[at..at + len].to_vec());
        at += len;
    }
    crate::weights::KTypeLabel::unitary(&blocks).unwrap()
}

fn even(pair: &str) -> crate::spectra::CharacterDatum {
    crate::spectra::CharacterDatum::orthogonal(pair.parse().unwrap(), 0, 0).unwrap()
}

#[test]
fn casimir_is_scalar_on_the_even_module() {
    let s = saw("C:sp(2)/o(1)", "C:sp(2)/o(1)");
    let tau = vacuum_type(&s);
    let r = verify_scalar_action(&s, &even("C:sp(2)/o(1)"), &tau, 2, SliceSpec::new(0, 6)).unwrap();
    assert_eq!(r.verdict, Verdict::Match, "{r:?}");
    assert_eq!(r.multiplicity_space, [(0, 1)].into());
    // In the one-variable oscillator the Casimir is already a constant of the Weyl algebra.
    let casimir = r.entries.iter().find(|e| e.x.degree() == 2).unwrap();
    let image = casimir.x.omega(1, &s.outer.g.generators).unwrap();
    assert_eq!(image.degree(), 0);
    assert_eq!(casimir.scalar, Action::Scalar(image.constant()));
}

#[test]
fn scalar_action_on_a_proper_seesaw() {
    let s = saw("C:sp(4)/o(1)", "A:u(1,1)/u(1)");
    let rho = even("C:sp(4)/o(1)");
    let sl = crate::fock::GradedSlice::new(2, 0, 4);
    let labels: std::collections::BTreeSet<_> =
        crate::fock::isotypic_decompose(&s.inner.g.group_meta, &sl).unwrap().into_iter().map(|c| c.label).collect();
    let mut found = 0;
    for tau in &labels {
        let r = verify_scalar_action(&s, &rho, tau, 2, SliceSpec::new(0, 4)).unwrap();
        assert_ne!(r.verdict, Verdict::Mismatch, "{tau}: {r:?}");
        if r.verdict == Verdict::Match {
            found += 1;
        }
    }
    assert!(found >= 2, "{found}");
}

#[test]
fn scalar_action_rejects_a_foreign_character() {
    let s = saw("C:sp(2)/o(1)", "C:sp(2)/o(1)");
    let tau = vacuum_type(&s);
    let r = verify_scalar_action(&s, &even("C:sp(4)/o(1)"), &tau, 1, SliceSpec::new(0, 2));
    assert!(matches!(r, Err(crate::Error::Precondition(_))));
}

#[test]
fn sl2_casimir_is_shared_by_the_even_and_odd_modules() {
    let r = verify_infchar_correspondence(&"C:sp(2)/o(1)".parse().unwrap(), 1, SliceSpec::new(0, 5)).unwrap();
    assert_eq!(r.verdict, Verdict::Match, "{r:?}");
    let casimir = r.entries.iter().find(|e| e.z.degree() == 2).unwrap();
    assert_eq!(casimir.pieces.len(), 2);
    assert!(casimir.shared, "{casimir:?}");
    let one = r.entries.iter().find(|e| e.z.degree() == 0).unwrap();
    assert_eq!(one.witness.as_ref().unwrap().to_string(), "1");
}

#[test]
fn unitary_center_goes_to_the_center() {
    let r = verify_infchar_correspondence(&"A:u(1,1)/u(1)".parse().unwrap(), 2, SliceSpec::new(0, 4)).unwrap();
    assert_eq!(r.verdict, Verdict::Match, "{r:?}");
    let linear = r.entries.iter().find(|e| e.z.degree() == 1).expect("center of gl(2)");
    assert!(linear.witness.as_ref().unwrap().degree() == 1);
    assert!(!linear.shared, "different U(1)-types see different central characters");
}

#[test]
fn invariant_images_commute_with_the_acting_algebra() {
    let s = saw("C:sp(4)/o(1)", "A:u(1,1)/u(1)");
    for x in invariant_polynomials(&s.outer.g, &s.inner.g.generators, &[], 3).unwrap() {
        let wx = x.omega(2, &s.outer.g.generators).unwrap();
        for h in &s.inner.g.generators {
            assert!(wx.bracket(h).unwrap().is_zero(), "[{h}, ω({x})]");
        }
        assert!(is_invariant(&s.outer.g, &x, &s.inner.g.generators, &[]).unwrap());
    }
    for y in invariant_polynomials(&s.inner.g_prime, &s.outer.g_prime.generators, &s.outer.g_prime.group_meta.involutions, 2).unwrap() {
        let wy = y.omega(2, &s.inner.g_prime.generators).unwrap();
        for sigma in &s.outer.g_prime.group_meta.involutions {
            assert_eq!(sigma.conjugate(&wy), wy);
        }
    }
}
