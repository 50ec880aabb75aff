//! Property tests for the algebraic identities the engine relies on.
//!
//! Oracles here are written independently of the library: Schur polynomials
//! by semistandard tableaux, dimensions by the hook-content formula, and
//! binomial coefficients directly.

use std::collections::BTreeMap;

use proptest::prelude::*;
use theta_core::algebra::{rref, GaussianRational as GR, SparseMatrix, SparseVec, Subspace};
use theta_core::fock::{
    act_on_fock, bracket, normal_order_product, omega_c, operator_matrix, operator_matrix_into, Exponents,
    FockVector, GradedSlice, SymplecticSpace, WeylElement,
};
use theta_core::pairs::{degree_j, DualPairDescriptor, Family};
use theta_core::spectra::{theta_character_spectrum, theta_spectrum_oracle, CharacterDatum};
use theta_core::transfer::{exterior_decomposition, SplitFactor, TransferGeometry};
use theta_core::weights::{
    branch_gl_to_glgl, branch_gl_to_o, infinitesimal_character, lr_coefficient, FactorLabel, GLWeight, HalfInt,
    InfinitesimalCharacter, KTypeLabel, OCharacter, Partition,
};

fn gr() -> impl Strategy<Value = GR> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| &GR::from_frac(a, b) + &(&GR::from_frac(c, d) * &GR::i()))
}

fn partition(max_size: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=max_size.max(1), 0..=max_len)
        .prop_filter_map("size bound", move |mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            (v.iter().sum::<u32>() <= max_size).then(|| Partition::new(v).unwrap())
        })
}

/// A Weyl element on `n` pairs with at most `terms` monomials of total degree ≤ `deg`.
fn weyl(n: usize, deg: u32, terms: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((prop::collection::vec(0u32..=deg, 2 * n), gr()), 1..=terms).prop_map(move |ts| {
        let mut w = WeylElement::zero(n);
        for (mut e, c) in ts {
            while e.iter().sum::<u32>() > deg {
                let k = e.iter().position(|&x| x > 0).unwrap();
                e[k] -= 1;
            }
            w = w.add(&WeylElement::monomial(n, &e[..n], &e[n..], c));
        }
        w
    })
}

// ---------------------------------------------------------------- scalars

proptest! {
    #[test]
    fn gaussian_rationals_form_a_field(a in gr(), b in gr(), c in gr()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a.clone());
        }
        prop_assert_eq!(GR::parse(&a.to_exact_string()).unwrap(), a);
    }
}

#[test]
fn i_squared_is_minus_one() {
    assert_eq!(&GR::i() * &GR::i(), -GR::one());
}

// ---------------------------------------------------------------- linear algebra

fn rows(cols: usize) -> impl Strategy<Value = Vec<SparseVec>> {
    prop::collection::vec(prop::collection::vec((0..cols, gr()), 0..=cols), 1..=5).prop_map(|rs| {
        rs.into_iter().map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect()
    })
}

proptest! {
    /// The stored basis depends only on the span: mixing the spanning set
    /// (adding one vector to another) leaves the subspace identical.
    #[test]
    fn subspaces_are_canonical(vs in rows(5), k in gr()) {
        let a = Subspace::span(5, vs.clone());
        let mut mixed = vs.clone();
        if mixed.len() > 1 {
            let extra: SparseVec = {
                let mut s = mixed[0].clone();
                for (i, v) in &mixed[1] {
                    let e = s.entry(*i).or_insert_with(GR::zero);
                    *e += &(&k * v);
                }
                s.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            };
            mixed[0] = extra;
        }
        mixed.reverse();
        prop_assert_eq!(&a, &Subspace::span(5, mixed));
        let m = SparseMatrix::from_rows(5, &vs);
        let r = rref(&m);
        prop_assert_eq!(r.rank + r.kernel.dim(), 5);
        prop_assert_eq!(&r.row_space, &a);
        for v in r.kernel.basis() {
            prop_assert!(m.apply(v).is_empty());
        }
        prop_assert!(m.entries().all(|(_, _, v)| !v.is_zero()));
    }
}

// ---------------------------------------------------------------- Littlewood–Richardson

/// Schur polynomial in `k` variables as a map from exponent vectors to
/// coefficients, by enumerating semistandard tableaux.
fn schur(lam: &Partition, k: usize) -> BTreeMap<Vec<u32>, i64> {
    fn fill(shape: &[u32], k: u32, cells: &mut Vec<Vec<u32>>, row: usize, col: usize, out: &mut BTreeMap<Vec<u32>, i64>, nv: usize) {
        if row == shape.len() {
            let mut e = vec![0u32; nv];
            for r in cells.iter() {
                for &x in r {
                    e[x as usize - 1] += 1;
                }
            }
            *out.entry(e).or_default() += 1;
            return;
        }
        if col == shape[row] as usize {
            return fill(shape, k, cells, row + 1, 0, out, nv);
        }
        let left = if col > 0 { cells[row][col - 1] } else { 1 };
        let above = if row > 0 { cells[row - 1][col] + 1 } else { 1 };
        for x in left.max(above)..=k {
            cells[row].push(x);
            fill(shape, k, cells, row, col + 1, out, nv);
            cells[row].pop();
        }
    }
    let mut out = BTreeMap::new();
    let mut cells = vec![Vec::new(); lam.len()];
    fill(lam.parts(), k as u32, &mut cells, 0, 0, &mut out, k);
    out
}

/// `s_μ s_ν = Σ c^λ s_λ` peeled off by dominant monomials.
fn lr_by_expansion(mu: &Partition, nu: &Partition, k: usize) -> BTreeMap<Partition, i64> {
    let (a, b) = (schur(mu, k), schur(nu, k));
    let mut prod: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (x, cx) in &a {
        for (y, cy) in &b {
            let e: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *prod.entry(e).or_default() += cx * cy;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        prod.retain(|_, c| *c != 0);
        // The largest exponent in lex order is dominant.
        let Some((top, c)) = prod.iter().next_back().map(|(e, c)| (e.clone(), *c)) else { break };
        let lam = Partition::new(top.iter().copied().filter(|&p| p > 0).collect()).unwrap();
        for (e, s) in schur(&lam, k) {
            *prod.entry(e).or_default() -= c * s;
        }
        out.insert(lam, c);
    }
    out
}

/// Dimension of the `GL(n)`-type `λ` by the hook-content formula.
fn hook_content_dim(lam: &Partition, n: usize) -> u128 {
    let conj = lam.conjugate();
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &row) in lam.parts().iter().enumerate() {
        for j in 0..row as usize {
            let content = n as i64 + j as i64 - i as i64;
            if content <= 0 {
                return 0;
            }
            num *= content as u128;
            den *= (row as usize - j - 1 + conj.part(j) as usize - i - 1 + 1) as u128;
        }
    }
    num / den
}

proptest! {
    #[test]
    fn lr_is_symmetric(mu in partition(4, 3), nu in partition(4, 3)) {
        for lam in theta_core::weights::partitions_of(mu.size() + nu.size(), 6) {
            prop_assert_eq!(lr_coefficient(&lam, &mu, &nu), lr_coefficient(&lam, &nu, &mu));
        }
    }

    #[test]
    fn lr_matches_monomial_expansion(mu in partition(3, 3), nu in partition(3, 3)) {
        let k = (mu.len() + nu.len()).max(1);
        for (lam, c) in lr_by_expansion(&mu, &nu, k) {
            prop_assert_eq!(lr_coefficient(&lam, &mu, &nu) as i64, c, "λ = {}", lam);
        }
    }
}

#[test]
fn branching_preserves_dimension() {
    for n in 1..=4usize {
        for size in 0..=6u32 {
            for lam in theta_core::weights::partitions_of(size, n) {
                let w = GLWeight::from_partition(&lam, n).unwrap();
                for r in 0..=n {
                    let s = n - r;
                    let total: u128 = branch_gl_to_glgl(&w, r, s)
                        .unwrap()
                        .into_iter()
                        .map(|((a, b), c)| {
                            let pa = Partition::new(a.entries().iter().map(|&e| e as u32).filter(|&e| e > 0).collect()).unwrap();
                            let pb = Partition::new(b.entries().iter().map(|&e| e as u32).filter(|&e| e > 0).collect()).unwrap();
                            u128::from(c) * hook_content_dim(&pa, r) * hook_content_dim(&pb, s)
                        })
                        .sum();
                    assert_eq!(total, hook_content_dim(&lam, n), "λ = {lam}, n = {n}, r = {r}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn orthogonal_invariants_need_even_parts(lam in partition(8, 5), m in 1usize..=6) {
        prop_assume!(lam.len() <= m);
        let expected = u64::from(lam.parts().iter().all(|p| p % 2 == 0));
        prop_assert_eq!(branch_gl_to_o(&lam, m, OCharacter::Trivial).unwrap(), expected);
    }
}

/// Littlewood's rule against brute force: the `O(m)`-invariants in
/// `S(C^m ⊗ C^k)` are the `U(k)`-types `λ + m/2` with `λ` even, each once.
#[test]
fn even_lift_agrees_with_brute_force() {
    for m in 1..=5usize {
        for k in 1..=2usize {
            let pair: DualPairDescriptor = format!("C:sp({})/o({m})", 2 * k).parse().unwrap();
            let d = CharacterDatum::trivial(pair);
            let cutoff = 4;
            let brute = theta_spectrum_oracle(&d, cutoff).unwrap();
            let comb = theta_character_spectrum(&d, cutoff).unwrap();
            assert!(brute.difference(&comb).is_empty(), "C:sp({})/o({m})", 2 * k);
            for (label, mult) in brute.iter() {
                assert_eq!(mult, 1);
                let blocks = label.unitary_blocks().unwrap();
                let shift = HalfInt::from_halves(m as i64);
                let parts: Vec<i64> = blocks[0].iter().map(|h| (*h - shift).to_int().unwrap()).collect();
                let lam = Partition::new(parts.iter().map(|&p| p as u32).filter(|&p| p > 0).collect()).unwrap();
                assert_eq!(branch_gl_to_o(&lam, m, OCharacter::Trivial).unwrap(), 1, "{label}");
            }
        }
    }
}

proptest! {
    #[test]
    fn infinitesimal_character_ignores_order(
        mut entries in prop::collection::vec(-5i64..=5, 1..=5),
        halves in -3i64..=3,
        seed in any::<u64>(),
    ) {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        let w = GLWeight::new(entries.clone()).unwrap();
        let shift = HalfInt::from_halves(halves);
        let base = infinitesimal_character(&w, shift);
        let rho = theta_core::weights::rho(entries.len());
        let mut shifted: Vec<HalfInt> =
            entries.iter().zip(rho).map(|(&e, r)| HalfInt::from_int(e) + shift + r).collect();
        // A deterministic shuffle driven by the seed.
        let mut s = seed;
        for i in (1..shifted.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shifted.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(&InfinitesimalCharacter::from_unsorted(shifted), &base);
        prop_assert!(base.representative().windows(2).all(|p| p[0] >= p[1]));
    }
}

// ---------------------------------------------------------------- Weyl algebra and Fock space

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_ordering_is_associative(n in 1usize..=3, seeds in (weyl(3, 2, 3), weyl(3, 2, 3), weyl(3, 2, 3))) {
        let restrict = |w: &WeylElement| {
            let mut out = WeylElement::zero(n);
            for (m, c) in w.terms() {
                let e = &m.0;
                if e[n..3].iter().chain(&e[3 + n..]).all(|&x| x == 0) {
                    out.add_term(Exponents(e[..n].iter().chain(&e[3..3 + n]).copied().collect()), c.clone());
                }
            }
            out
        };
        let (x, y, z) = (restrict(&seeds.0), restrict(&seeds.1), restrict(&seeds.2));
        let left = normal_order_product(&normal_order_product(&x, &y).unwrap(), &z).unwrap();
        let right = normal_order_product(&x, &normal_order_product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(left.degree() <= x.degree() + y.degree() + z.degree());
    }

    #[test]
    fn fock_action_is_a_representation(x in weyl(2, 2, 3), y in weyl(2, 2, 3)) {
        let slice = GradedSlice::new(2, 0, 3);
        let xy = normal_order_product(&x, &y).unwrap();
        let my = operator_matrix(&y, &slice).unwrap();
        let mid = slice.widened(y.degree());
        let mx = operator_matrix_into(&x, &mid, &mid.widened(x.degree())).unwrap();
        let mxy = operator_matrix_into(&xy, &slice, &mid.widened(x.degree())).unwrap();
        prop_assert_eq!(&mx.mul(&my).unwrap(), &mxy);

        let br = bracket(&x, &y).unwrap();
        let myx = operator_matrix_into(&normal_order_product(&y, &x).unwrap(), &slice, &mid.widened(x.degree())).unwrap();
        let mbr = operator_matrix_into(&br, &slice, &mid.widened(x.degree())).unwrap();
        prop_assert_eq!(mxy.sub(&myx).unwrap(), mbr);

        for e in slice.basis() {
            let v = FockVector::monomial(e.clone(), GR::one());
            let lhs = act_on_fock(&xy, &v).unwrap();
            let rhs = act_on_fock(&x, &act_on_fock(&y, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quadratic_elements_shift_degree_by_at_most_two(x in weyl(2, 2, 4), d in 0u32..=4) {
        let homogeneous = |w: &WeylElement| {
            let mut out = WeylElement::zero(2);
            for (m, c) in w.terms() {
                if m.0.iter().sum::<u32>() == 2 {
                    out.add_term(m.clone(), c.clone());
                }
            }
            out
        };
        let q = homogeneous(&x);
        for e in GradedSlice::new(2, d, d).basis() {
            let out = act_on_fock(&q, &FockVector::monomial(e.clone(), GR::one())).unwrap();
            for (m, _) in out.terms() {
                let k = m.degree() as i64 - d as i64;
                prop_assert!(k == -2 || k == 0 || k == 2, "degree {} from {}", m.degree(), d);
            }
        }
    }
}

/// `T = J·S` with `S` an elementary symmetric matrix spans `sp(2N)`.
fn sp_basis(n: usize) -> Vec<SparseMatrix> {
    let j = SymplecticSpace::new(n).gram();
    let mut out = Vec::new();
    for a in 0..2 * n {
        for b in a..2 * n {
            let mut s = SparseMatrix::zeros(2 * n, 2 * n);
            s.set(a, b, GR::one());
            s.set(b, a, GR::one());
            out.push(j.mul(&s).unwrap());
        }
    }
    out
}

#[test]
fn omega_is_a_lie_homomorphism() {
    for n in 1..=3 {
        let basis = sp_basis(n);
        let omegas: Vec<WeylElement> = basis.iter().map(|t| omega_c(SymplecticSpace::new(n), t).unwrap()).collect();
        for (s, os) in basis.iter().zip(&omegas) {
            for (t, ot) in basis.iter().zip(&omegas) {
                let st = s.mul(t).unwrap().sub(&t.mul(s).unwrap()).unwrap();
                let lhs = omega_c(SymplecticSpace::new(n), &st).unwrap();
                assert_eq!(lhs, bracket(os, ot).unwrap(), "N = {n}");
            }
        }
    }
}

#[test]
fn omega_intertwines_the_vector_action() {
    for n in 1..=3 {
        for t in sp_basis(n) {
            let q = omega_c(SymplecticSpace::new(n), &t).unwrap();
            for k in 0..2 * n {
                let w = WeylElement::from_vector(n, &SparseVec::from([(k, GR::one())]));
                let tw: SparseVec = (0..2 * n).map(|r| (r, t.get(r, k))).filter(|(_, v)| !v.is_zero()).collect();
                assert_eq!(bracket(&q, &w).unwrap(), WeylElement::from_vector(n, &tw));
            }
        }
    }
}

// ---------------------------------------------------------------- tables, exterior powers, labels

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

proptest! {
    #[test]
    fn exterior_dimension_identity(factors in prop::collection::vec((0usize..=2, 0usize..=2), 1..=2), j in 0usize..=9) {
        let geom = TransferGeometry::new(factors.iter().map(|&(a, b)| SplitFactor { a, b }).collect());
        let dim: u64 = factors.iter().map(|&(a, b)| 2 * (a * b) as u64).sum();
        let total: u128 = exterior_decomposition(&geom, j).unwrap().iter().map(|(l, c)| l.dim() * u128::from(*c)).sum();
        prop_assert_eq!(total, binomial(dim, j as u64));
    }

    #[test]
    fn transfer_degree_grows_with_p_and_q(r in 0u32..=6, s in 0u32..=6, p in 0u32..=3, q in 0u32..=3) {
        for family in [Family::A, Family::C, Family::D] {
            if let Ok(j) = degree_j(family, r, s, p, q) {
                if let Ok(jp) = degree_j(family, r, s, p + 1, q) {
                    prop_assert!(jp >= j);
                }
                if let Ok(jq) = degree_j(family, r, s, p, q + 1) {
                    prop_assert!(jq >= j);
                }
                prop_assert_eq!(degree_j(family, r, s, 0, 0).unwrap(), 0);
            }
        }
    }

    #[test]
    fn labels_round_trip_through_text(
        blocks in prop::collection::vec((prop::collection::vec(-4i64..=6, 1..=3), any::<bool>()), 0..=2),
        orth in prop::collection::vec((1usize..=4, partition(4, 2), any::<bool>()), 0..=2),
    ) {
        let mut factors = Vec::new();
        for (mut e, half) in blocks {
            e.sort_unstable_by(|a, b| b.cmp(a));
            let h: Vec<HalfInt> = e.iter().map(|&x| HalfInt::from_halves(2 * x + i64::from(half))).collect();
            factors.push(FactorLabel::unitary(&h).unwrap());
        }
        for (n, lam, plus) in orth {
            if let Ok(f) = FactorLabel::orthogonal(n, lam, if plus { 1 } else { -1 }) {
                factors.push(f);
            }
        }
        prop_assume!(!factors.is_empty());
        let label = KTypeLabel::new(factors);
        prop_assert_eq!(label.to_string().parse::<KTypeLabel>().unwrap(), label);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Graded entries of a theta lift sum to the stored multiplicities.
    #[test]
    fn graded_series_marginals(k in 1usize..=2, m in 1usize..=3, odd in any::<bool>(), cutoff in 2u32..=6) {
        let pair: DualPairDescriptor = format!("C:sp({})/o({m})", 2 * k).parse().unwrap();
        let d = CharacterDatum::parse(pair, if odd { "det" } else { "trivial" }).unwrap();
        let s = theta_character_spectrum(&d, cutoff).unwrap();
        if let Some(g) = s.graded_entries() {
            let mut sums: BTreeMap<&KTypeLabel, u64> = BTreeMap::new();
            for ((deg, l), c) in g {
                prop_assert!(*deg <= cutoff);
                *sums.entry(l).or_default() += c;
            }
            for (l, c) in s.iter() {
                prop_assert!(c >= 1);
                prop_assert_eq!(sums.get(l).copied().unwrap_or(0), c);
            }
        }
    }
}
