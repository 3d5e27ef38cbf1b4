use std::collections::BTreeMap;

use gliaison::groebner::GradedIdeal;
use gliaison::homology::*;
use gliaison::monomial::binomial;
use gliaison::{PolyRing, Polynomial};

fn ideal(gens: &[&str]) -> GradedIdeal {
    GradedIdeal::parse(&PolyRing::standard(4), gens).unwrap()
}

fn resolve_quotient(i: &GradedIdeal) -> FreeResolution {
    let p = presentation_of_ideal(i, None, false).unwrap();
    free_resolution(&p, 5).unwrap()
}

#[test]
fn koszul_resolution_of_residue_field() {
    let i = GradedIdeal::irrelevant(&PolyRing::standard(4));
    let r = resolve_quotient(&i);
    assert_eq!(r.betti_table().totals(), vec![1, 4, 6, 4, 1]);
    assert_eq!(pd_and_depth(&r).unwrap(), (4, 0));
    assert!(r.is_complex());
    assert!(r.is_exact());
}

#[test]
fn twisted_cubic_resolution() {
    let i = ideal(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    let r = resolve_quotient(&i);
    let t = r.betti_table();
    assert_eq!(t, BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]));
    assert_eq!(pd_and_depth(&r).unwrap(), (2, 2));
    let ideal_mod = presentation_of_ideal(&i, None, true).unwrap();
    assert_eq!(ideal_mod.generators().degrees(), &[2, 2, 2]);
    assert_eq!(ideal_mod.relations().degrees(), &[3, 3]);
}

#[test]
fn skew_lines_resolution_and_euler() {
    let i = ideal(&["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let r = resolve_quotient(&i);
    let t = r.betti_table();
    assert_eq!(
        t,
        BettiTable::from_entries(&[(0, 0, 1), (1, 2, 4), (2, 3, 4), (3, 4, 1)])
    );
    assert_eq!(pd_and_depth(&r).unwrap(), (3, 1));
    let hs = gliaison::hilbert::hilbert_series(&i);
    assert_eq!(r.euler_series(), hs);
    assert!(!t.is_symmetric());
}

#[test]
fn ext_of_residue_field_and_skew_lines() {
    let ring = PolyRing::standard(4);
    let k = presentation_of_ideal(&GradedIdeal::irrelevant(&ring), None, false).unwrap();
    let exts = ext_modules(&k, 5).unwrap();
    assert_eq!(exts.len(), 5);
    for e in &exts[..4] {
        assert!(e.is_zero());
    }
    let top = exts[4].hilbert_series().finite_table().unwrap();
    assert_eq!(top, BTreeMap::from([(-4, 1)]));

    let skew = presentation_of_ideal(&ideal(&["x0*x2", "x0*x3", "x1*x2", "x1*x3"]), None, false).unwrap();
    let exts = ext_modules(&skew, 5).unwrap();
    assert!(exts[0].is_zero() && exts[1].is_zero());

    let cubic = presentation_of_ideal(&ideal(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]), None, false).unwrap();
    let exts = ext_modules(&cubic, 5).unwrap();
    assert_eq!(exts.len(), 3);
    assert!(!exts[2].is_zero());
}

#[test]
fn deficiency_modules() {
    let skew = ideal(&["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let d = deficiency_module(&skew, 1).unwrap();
    assert!(d.finite);
    assert_eq!(d.finite_table(), BTreeMap::from([(0, 1)]));
    let m = d.module.unwrap();
    assert_eq!(m.hilbert_series().finite_table().unwrap(), BTreeMap::from([(0, 1)]));

    let cubic = ideal(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    assert!(deficiency_module(&cubic, 1).unwrap().is_zero());
    let ci = ideal(&["x0^2 + x1*x2", "x3^2 - x0*x1"]);
    assert!(deficiency_module(&ci, 1).unwrap().is_zero());
}

#[test]
fn graded_dual_reverses() {
    let ring = PolyRing::standard(4);
    let k = presentation_of_ideal(&GradedIdeal::irrelevant(&ring), None, false).unwrap();
    let kk = k.direct_sum(&k.twist(-1));
    let d = graded_dual(&kk).unwrap();
    assert_eq!(d.hilbert_series().finite_table().unwrap(), BTreeMap::from([(-1, 1), (0, 1)]));
    let dd = graded_dual(&d).unwrap();
    assert_eq!(dd.hilbert_series(), kk.hilbert_series());
    assert!(graded_dual(&presentation_of_ideal(&GradedIdeal::zero(&ring), None, false).unwrap()).is_err());
}

#[test]
fn fibered_sum_of_two_variables() {
    let ring = PolyRing::standard(4);
    let a = ModulePresentation::free(&ring, FreeGradedModule::from_degrees(vec![1]));
    let b = ModulePresentation::free(&ring, FreeGradedModule::from_degrees(vec![0]));
    let x0 = Polynomial::var(&ring, 0);
    let x1 = Polynomial::var(&ring, 1);
    let f = GradedMap::new(&ring, a.generators().clone(), b.generators().clone(), vec![vec![x0.clone()]]).unwrap();
    let g = GradedMap::new(&ring, a.generators().clone(), b.generators().clone(), vec![vec![x1.clone()]]).unwrap();
    let s = fibered_sum(&a, &b, &b, &f, &g).unwrap();
    assert_eq!(s.map().columns(), &[vec![x0, x1.neg()]]);
    for n in 0..8 {
        let expect = 2 * binomial(n + 3, 3) - binomial(n + 2, 3);
        assert_eq!(s.hilbert_function(n as i32) as i128, expect);
    }
    // identity on one side gives the other module
    let id = GradedMap::identity(&ring, a.generators());
    let s2 = fibered_sum(&a, &a, &b, &id, &g).unwrap();
    assert_eq!(s2.hilbert_series(), b.hilbert_series());
}

#[test]
fn minimalize_examples() {
    let ring = PolyRing::standard(4);
    let p = |s: &str| Polynomial::parse(&ring, s).unwrap();
    let out = prune_unit_entries(vec![vec![p("1"), p("x0")], vec![p("x1"), p("x2")]]);
    assert_eq!(out, vec![vec![p("x2 - x1*x0")]]);
    let f = FreeGradedModule::from_degrees(vec![0, 1]);
    let id = ModulePresentation::new(GradedMap::identity(&ring, &f)).minimalize();
    assert_eq!(id.generators().rank(), 0);
    let cubic = presentation_of_ideal(&ideal(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]), None, true).unwrap();
    let again = cubic.minimalize();
    assert_eq!(again.map(), cubic.map());
}

#[test]
fn kernel_and_cokernel() {
    let ring = PolyRing::standard(4);
    let x0 = Polynomial::var(&ring, 0);
    let x1 = Polynomial::var(&ring, 1);
    let m = GradedMap::new(
        &ring,
        FreeGradedModule::from_degrees(vec![1]),
        FreeGradedModule::from_degrees(vec![0]),
        vec![vec![x0.clone()]],
    )
    .unwrap();
    assert!(kernel_of_free_map(&m).is_zero());
    let m2 = GradedMap::new(
        &ring,
        FreeGradedModule::from_degrees(vec![1, 1]),
        FreeGradedModule::from_degrees(vec![0]),
        vec![vec![x0.clone()], vec![x1.clone()]],
    )
    .unwrap();
    let k = kernel_generators(&m2);
    assert_eq!(k.ncols(), 1);
    assert_eq!(k.source().degrees(), &[2]);
    let src = ModulePresentation::free(&ring, m2.source().clone());
    let tgt = ModulePresentation::free(&ring, m2.target().clone());
    let ker = kernel_of_map(&src, &tgt, &m2);
    let coker = cokernel_of_map(&tgt, &m2);
    let (a, b, c) = (ker.hilbert_series(), src.hilbert_series(), tgt.hilbert_series());
    // 0 → ker → src → tgt → coker → 0
    for n in -10..=10 {
        assert_eq!(
            a.hilbert_function(n) - b.hilbert_function(n) + c.hilbert_function(n) - coker.hilbert_function(n),
            0
        );
    }
}
