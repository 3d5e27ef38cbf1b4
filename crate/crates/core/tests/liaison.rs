use std::collections::BTreeMap;

use gliaison::groebner::GradedIdeal;
use gliaison::liaison::*;
use gliaison::ring::RingDescriptor;
use gliaison::PolyRing;

fn p3() -> RingDescriptor {
    RingDescriptor::new(PolyRing::standard(4))
}

fn scheme(amb: &RingDescriptor, gens: &[&str]) -> SubschemeRecord {
    SubschemeRecord::from_generators(amb, gens).unwrap()
}

#[test]
fn skew_lines_link_to_skew_lines() {
    let a = p3();
    let c = scheme(&a, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let y = scheme(&a, &["x0*x2", "x1*x3"]);
    let (res, cert) = link(&c, &y).unwrap();
    assert!(cert.valid, "{:?}", cert.failures);
    assert_eq!(cert.kind, LinkKind::CiLink);
    assert_eq!(cert.degrees, [2, 2, 4]);
    let expect = GradedIdeal::parse(&a.ring, &["x0*x1", "x0*x2", "x1*x3", "x2*x3"]).unwrap();
    assert_eq!(res.ideal(), &expect);
    let m1 = rao_module(&c).unwrap();
    let m2 = rao_module(&res).unwrap();
    assert_eq!(m1.table, BTreeMap::from([(0, 1)]));
    assert_eq!(rao_shift_equivalent(&m1, &m2), Some(0));
}

#[test]
fn twisted_cubic_links_to_line() {
    let a = p3();
    let c = scheme(&a, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    assert!(c.is_acm() && !c.is_ci());
    let y = scheme(&a, &["x0*x2 - x1^2", "x1*x3 - x2^2"]);
    let (res, cert) = link(&c, &y).unwrap();
    assert!(cert.valid);
    assert_eq!(res.ideal(), &GradedIdeal::parse(&a.ring, &["x1", "x2"]).unwrap());
    assert!(rao_module(&c).unwrap().is_zero());
}

#[test]
fn non_containment_is_reported() {
    let a = p3();
    let c = scheme(&a, &["x0", "x2"]);
    let y = scheme(&a, &["x0*x2", "x1*x3"]);
    let (_, cert) = link(&c, &y).unwrap();
    assert!(!cert.valid);
    assert!(cert.failures.iter().any(|f| f.contains("⊆")));
}

#[test]
fn ntype_of_skew_lines_and_link_transform() {
    let a = p3();
    let c = scheme(&a, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let nt = n_type_resolution(&c).unwrap();
    assert!(nt.verify().unwrap(), "{:?} {:?}", nt.h1, nt.h2);
    assert_eq!(nt.h1, Some(BTreeMap::from([(0, 1)])));
    let y = scheme(&a, &["x0*x2", "x1*x3"]);
    let t = link_transform_ntype(&nt, &y).unwrap();
    assert!(t.residual_matches);
    assert!(t.ntype.verify().unwrap(), "{:?} {:?} {}", t.ntype.h1, t.ntype.h2, t.ntype.hf_exact);
    assert!(t.reversed_shift.is_some());
    assert!(t.middle_extension);
}

#[test]
fn ntype_of_acm_curve() {
    let a = p3();
    let c = scheme(&a, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    let nt = n_type_resolution(&c).unwrap();
    assert!(nt.verify().unwrap());
    let y = scheme(&a, &["x0*x2 - x1^2", "x1*x3 - x2^2"]);
    let t = link_transform_ntype(&nt, &y).unwrap();
    assert!(t.residual_matches);
    assert!(t.ntype.verify().unwrap());
}

#[test]
fn curve_with_rao_module_k() {
    let a = p3();
    let c = scheme(&a, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let m = rao_module(&c).unwrap();
    let out = curve_from_rao_module(&m, &a, 3, 8, 0).unwrap();
    assert!(rao_shift_equivalent(&m, &out.rao).is_some());
    let zero = rao_module(&scheme(&a, &["x0", "x1"])).unwrap();
    let ci = curve_from_rao_module(&zero, &a, 3, 8, 0).unwrap();
    assert!(ci.curve.is_acm());
}

#[test]
fn biliaison_of_skew_lines_on_a_smooth_quadric() {
    let a = p3();
    let c = scheme(&a, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let s = scheme(&a, &["x0*x3 - x1*x2"]);
    let b = elementary_biliaison(&c, &s, 1, 3, 16).unwrap();
    assert!(b.first.valid && b.second.valid);
    assert_eq!(b.link_degree, 2);
    assert_eq!(b.result.degree(), 4);
    let m = rao_module(&b.result).unwrap();
    assert_eq!(m.table.values().sum::<i64>(), 1);
    assert_eq!(b.rao_shift, Some(*m.table.keys().next().unwrap()));
}

#[test]
fn biliaison_needs_a_containing_surface() {
    let a = p3();
    let c = scheme(&a, &["x0", "x1"]);
    let s = scheme(&a, &["x2*x3 - x0^2"]);
    assert!(matches!(
        elementary_biliaison(&c, &s, 1, 1, 4),
        Err(gliaison::Error::Usage(_))
    ));
}

#[test]
fn random_links_are_seeded() {
    let a = p3();
    let c = scheme(&a, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    let (y1, r1, cert1) = ci_link_in_x(&c, (2, 2), 9, 16).unwrap();
    let (y2, r2, _) = ci_link_in_x(&c, (2, 2), 9, 16).unwrap();
    assert_eq!(y1.ideal().generators(), y2.ideal().generators());
    assert_eq!(r1.ideal().generators(), r2.ideal().generators());
    assert!(cert1.valid);
    assert_eq!(r1.degree(), 1);
    // no linear forms vanish on the twisted cubic
    assert!(ci_link_in_x(&c, (1, 2), 9, 16).is_err());
}

#[test]
fn two_conics_meeting_in_a_point() {
    let a = RingDescriptor::new(PolyRing::standard(5));
    let r = a.ring.clone();
    let i = gliaison::groebner::intersect(
        &GradedIdeal::parse(&r, &["x0", "x1", "x4^2 - x2*x3"]).unwrap(),
        &GradedIdeal::parse(&r, &["x2", "x3", "x4^2 - x0*x1"]).unwrap(),
    )
    .unwrap();
    let c = SubschemeRecord::new(&a, i).unwrap();
    assert_eq!(c.degree(), 4);
    assert_eq!(c.dimension(), 1);
    let m = rao_module(&c).unwrap();
    assert_eq!(m.table, BTreeMap::from([(0, 1), (1, 1)]));
}
