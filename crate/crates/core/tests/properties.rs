//! Randomized invariants of the arithmetic, Gröbner, Hilbert and matrix
//! factorization layers.

use std::sync::Arc;

use gliaison::groebner::{ideal_basis, ideal_quotient, intersect, GradedIdeal, PairSelection};
use gliaison::hilbert::hilbert_function;
use gliaison::homology::{FreeGradedModule, GradedMap, ModulePresentation};
use gliaison::mcm::{
    extension_module, knoerrer_double_cover, knoerrer_xy, mf_complete, mf_verify, ExtensionClass,
    MatrixFactorization,
};
use gliaison::{random_homogeneous, Monomial, PolyRing, Polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: u32 = 32003;

fn ring3() -> Arc<PolyRing> {
    PolyRing::standard(3)
}

fn arb_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::array::uniform3(0u32..4), 0..P), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Monomial::from_exponents(&e), c))
            .collect();
        Polynomial::from_terms(&r, terms)
    })
}

/// A few homogeneous generators in four variables, degrees 1 to 3.
fn arb_ideal() -> impl Strategy<Value = (u64, Vec<u32>)> {
    (any::<u64>(), prop::collection::vec(1u32..=3, 1..=4))
}

fn build(r: &Arc<PolyRing>, seed: u64, degrees: &[u32]) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees
        .iter()
        .map(|&d| random_homogeneous(r, d, &mut rng))
        .filter(|g| !g.is_zero())
        .collect()
}

/// Sparse homogeneous generators, so the ideals are not all complete
/// intersections of general forms.
fn arb_sparse_ideal(r: Arc<PolyRing>) -> impl Strategy<Value = GradedIdeal> {
    let nv = r.nvars();
    prop::collection::vec(
        (1u32..=3, prop::collection::vec((any::<prop::sample::Index>(), 1..P), 1..=3)),
        1..=4,
    )
    .prop_map(move |gens| {
        let gens = gens
            .into_iter()
            .map(|(d, terms)| {
                let mons = gliaison::monomial::monomials_of_degree(nv, d);
                let terms = terms.into_iter().map(|(i, c)| (mons[i.index(mons.len())], c)).collect();
                Polynomial::from_terms(&r, terms)
            })
            .filter(|g| !g.is_zero())
            .collect();
        GradedIdeal::new(&r, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_poly(ring3()), b in arb_poly(ring3()), c in arb_poly(ring3())) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn groebner_basis_is_independent_of_pair_order((seed, degrees) in arb_ideal()) {
        let r = PolyRing::standard(4);
        let gens = build(&r, seed, &degrees);
        let normal = ideal_basis(&r, &gens, PairSelection::Normal);
        let fifo = ideal_basis(&r, &gens, PairSelection::Fifo);
        prop_assert_eq!(normal, fifo);
    }

    #[test]
    fn normal_form_is_idempotent_and_reduces(
        i in arb_sparse_ideal(PolyRing::standard(4)),
        seed in any::<u64>(),
        d in 1u32..=4,
    ) {
        let r = i.ring().clone();
        let f = random_homogeneous(&r, d, &mut ChaCha8Rng::seed_from_u64(seed));
        let nf = i.normal_form(&f);
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert!(i.contains(&(&f - &nf)));
        // no term of the normal form lies in the initial ideal
        let lead = i.leading_monomials();
        for (m, _) in nf.terms() {
            prop_assert!(!lead.iter().any(|l| l.divides(m)));
        }
    }

    #[test]
    fn intersection_and_sum_hilbert_identity(
        i in arb_sparse_ideal(PolyRing::standard(4)),
        j in arb_sparse_ideal(PolyRing::standard(4)),
    ) {
        let cap = intersect(&i, &j).unwrap();
        let sum = i.sum(&j);
        prop_assert!(i.contains_ideal(&cap) && j.contains_ideal(&cap));
        prop_assert!(cap.contains_ideal(&i.product(&j)));
        for n in 0..=5 {
            prop_assert_eq!(
                hilbert_function(&cap, n) + hilbert_function(&sum, n),
                hilbert_function(&i, n) + hilbert_function(&j, n)
            );
        }
    }

    #[test]
    fn quotient_properties(
        i in arb_sparse_ideal(PolyRing::standard(4)),
        j in arb_sparse_ideal(PolyRing::standard(4)),
    ) {
        let q = ideal_quotient(&i, &j).unwrap();
        prop_assert!(q.contains_ideal(&i));
        // (I : J) J ⊆ I
        prop_assert!(i.contains_ideal(&q.product(&j)));
        // (I : J) = (I ∩ J) : J
        let q2 = ideal_quotient(&intersect(&i, &j).unwrap(), &j).unwrap();
        prop_assert_eq!(q.groebner_basis(), q2.groebner_basis());
    }

    #[test]
    fn knoerrer_xy_is_valid(seed in any::<u64>()) {
        let r = PolyRing::standard(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_homogeneous(&r, 1, &mut rng), random_homogeneous(&r, 1, &mut rng));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let base = MatrixFactorization::from_product(&a, &b).unwrap();
        let mf = knoerrer_xy(&base, 3, 4).unwrap();
        let rep = mf_verify(&mf);
        prop_assert!(rep.valid, "{:?}", rep.offending);
        prop_assert_eq!(mf.size(), 2);
        prop_assert_eq!(mf_complete(&mf.phi, &mf.f).unwrap().psi.rows(), mf.psi.rows());
    }

    #[test]
    fn knoerrer_double_cover_is_valid(seed in any::<u64>()) {
        let r = PolyRing::standard(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_homogeneous(&r, 1, &mut rng), random_homogeneous(&r, 1, &mut rng));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let base = MatrixFactorization::from_product(&a, &b).unwrap();
        let two = knoerrer_double_cover(&base, 4).unwrap();
        let four = knoerrer_double_cover(&two, 3).unwrap();
        for mf in [&two, &four] {
            let rep = mf_verify(mf);
            prop_assert!(rep.valid, "{:?}", rep.offending);
        }
        prop_assert_eq!(four.size(), 4);
    }

    #[test]
    fn extensions_of_cyclic_modules_are_hf_additive(
        seed in any::<u64>(),
        dg in 1u32..=3,
        dh in 1u32..=3,
    ) {
        // B = S/(g) has no relation syzygies, so every c is a cocycle
        let r = PolyRing::standard(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_homogeneous(&r, dg, &mut rng);
        let h = random_homogeneous(&r, dh, &mut rng);
        let c = random_homogeneous(&r, dg, &mut rng);
        prop_assume!(!g.is_zero() && !h.is_zero());
        let cyclic = |p: &Polynomial, d: u32| {
            ModulePresentation::new(GradedMap::from_columns(
                &r,
                FreeGradedModule::from_degrees(vec![d as i32]),
                FreeGradedModule::from_degrees(vec![0]),
                vec![vec![p.clone()]],
            ))
        };
        let (a, b) = (cyclic(&h, dh), cyclic(&g, dg));
        let cocycle = GradedMap::from_columns(
            &r,
            b.relations().clone(),
            a.generators().clone(),
            vec![vec![c]],
        );
        let out = extension_module(&ExtensionClass { a: a.clone(), b: b.clone(), cocycle }).unwrap();
        prop_assert!(out.hf_additive);
        for n in -2..=8 {
            prop_assert_eq!(
                out.module.hilbert_function(n),
                a.hilbert_function(n) + b.hilbert_function(n)
            );
        }
    }
}
