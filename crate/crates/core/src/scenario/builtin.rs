//! The built-in scenarios. Each embeds its data; a user document may replace
//! the curve `C` (and the link `Y` where one is fixed) in the liaison
//! scenarios, in which case checks against frozen values are skipped.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Run, ScenarioOptions, StepBuilder};
use crate::error::{Error, Result};
use crate::groebner::{intersect, GradedIdeal};
use crate::homology::{
    annihilator, free_resolution, reverse_table, BettiTable,
    FreeGradedModule, GradedMap, ModulePresentation,
};
use crate::liaison::{
    ci_link_in_x, curve_from_rao_module, elementary_biliaison, link, link_transform_ntype,
    n_type_resolution, rao_module, rao_shift_equivalent, syzygy_dual, table_shift,
    LinkageCertificate, RaoModuleRecord, SubschemeRecord,
};
use crate::linalg::nullspace;
use crate::mcm::{
    acm_module_check, extension_module, knoerrer_double_cover, knoerrer_xy, mf_complete,
    mf_verify, rank1_acm_to_surface, serre_sheaf_from_ag, serre_subscheme_from_section,
    structure_module, ExtensionClass, MatrixFactorization, MfReport,
};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingDescriptor};

pub(super) fn dispatch(name: &str, run: &mut Run) {
    let _ = match name {
        "skew-lines" => skew_lines(run),
        "twisted-cubic-link" => twisted_cubic_link(run),
        "quadric-quintic" => quadric_quintic(run),
        "line-conic-line" => line_conic_line(run),
        "lesperance" => lesperance(run),
        "cone-planes" => cone_planes(run),
        "spinor" => spinor(run),
        "knoerrer-tower" => knoerrer_tower(run),
        "rao-roundtrip" => rao_roundtrip(run),
        "cubic-surface-points" => cubic_surface_points(run),
        _ => unreachable!("names are checked by run_scenario"),
    };
}

fn poly(ring: &Arc<PolyRing>, s: &str) -> Polynomial {
    Polynomial::parse(ring, s).expect("built-in polynomial")
}

fn p3() -> RingDescriptor {
    RingDescriptor::new(PolyRing::standard(4))
}

fn p4() -> RingDescriptor {
    RingDescriptor::new(PolyRing::standard(5))
}

fn hypersurface(f: &str) -> RingDescriptor {
    let ring = PolyRing::standard(5);
    let f = poly(&ring, f);
    RingDescriptor::new(ring).with_modulus(f).expect("built-in modulus")
}

const SMOOTH_QUADRIC: &str = "x0*x4 + x1*x3 - 2*x2^2";
const CONE: &str = "x0*x3 - x1*x2";

fn fmt_ideal(i: &GradedIdeal) -> String {
    let g: Vec<String> = i.minimal_generators().iter().map(|p| p.to_string()).collect();
    format!("({})", g.join(", "))
}

fn fmt_table(t: &BTreeMap<i32, i64>) -> String {
    let parts: Vec<String> = t.iter().map(|(d, v)| format!("{d}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn hf_table(c: &SubschemeRecord, max: i32) -> BTreeMap<i32, i64> {
    (0..=max).map(|n| (n, c.hilbert_function(n))).collect()
}

fn describe(sb: &mut StepBuilder, name: &str, c: &SubschemeRecord) {
    sb.output(format!(
        "{name} = {}: dim {}, degree {}, codim in X {}",
        fmt_ideal(c.ideal()),
        c.dimension(),
        c.degree(),
        c.codimension_in_x()
    ));
}

/// The ideal `name` from the user document when present, else the built-in
/// generators. The flag tells whether built-in data was used.
fn source_curve(opts: &ScenarioOptions, name: &str, desc: &RingDescriptor, gens: &[&str]) -> Result<(SubschemeRecord, bool)> {
    if let Some(doc) = &opts.input {
        if let Some(i) = doc.ideal(name) {
            return Ok((SubschemeRecord::new(&doc.descriptor(), i)?.with_label(name), false));
        }
    }
    Ok((SubschemeRecord::from_generators(desc, gens)?.with_label(name), true))
}

/// Records a link and its checks: certificate, involution, Rao duality.
fn link_step(
    run: &mut Run,
    key: &str,
    c: &SubschemeRecord,
    y: &SubschemeRecord,
    rao_c: Option<&RaoModuleRecord>,
) -> Option<(SubschemeRecord, Option<RaoModuleRecord>)> {
    run.step("link", |sb, rep| {
        sb.input(format!("C = {}", fmt_ideal(c.ideal())));
        sb.input(format!("Y = {}", fmt_ideal(y.ideal())));
        let (res, cert) = link(c, y)?;
        record_link(sb, rep, key, c, y, &res, &cert, rao_c)?;
        let rao = match rao_c {
            Some(_) => Some(rao_module(&res)?),
            None => None,
        };
        Ok((res, rao))
    })
}

#[allow(clippy::too_many_arguments)]
fn record_link(
    sb: &mut StepBuilder,
    rep: &mut super::ScenarioReport,
    key: &str,
    c: &SubschemeRecord,
    y: &SubschemeRecord,
    res: &SubschemeRecord,
    cert: &LinkageCertificate,
    rao_c: Option<&RaoModuleRecord>,
) -> Result<()> {
    describe(sb, "C'", res);
    sb.check("certificate valid", cert.valid, cert.failures.join("; "));
    sb.check(
        "degree additivity",
        cert.degree_additive,
        format!("{} + {} = {}", cert.degrees[0], cert.degrees[1], cert.degrees[2]),
    );
    let (back, _) = link(res, y)?;
    sb.check("linkage involution", back.ideal() == c.ideal(), "");
    if let Some(m) = rao_c {
        let m2 = rao_module(res)?;
        let rev = reverse_table(&m.table, 0);
        let h = table_shift(&rev, &m2.table);
        sb.output(format!("Rao(C') = {}", fmt_table(&m2.table)));
        sb.check(
            "Rao(C') is a reversed translate of Rao(C)",
            h.is_some(),
            format!("Rao(C) = {}", fmt_table(&m.table)),
        );
    }
    rep.certificate(key, cert);
    Ok(())
}

/// A link by a random complete intersection of the given degrees inside `X`.
fn ci_link_step(
    run: &mut Run,
    key: &str,
    c: &SubschemeRecord,
    degrees: (u32, u32),
    seed: u64,
    rao_c: Option<&RaoModuleRecord>,
) -> Option<(SubschemeRecord, Option<RaoModuleRecord>)> {
    let retries = run.opts.retries;
    run.step("ci_link_in_x", |sb, rep| {
        sb.input(format!("C = {}", fmt_ideal(c.ideal())));
        sb.input(format!("degrees ({}, {}), seed {seed}", degrees.0, degrees.1));
        let (y, res, cert) = ci_link_in_x(c, degrees, seed, retries)?;
        sb.output(format!("Y = {}", fmt_ideal(y.ideal())));
        record_link(sb, rep, key, c, &y, &res, &cert, rao_c)?;
        let rao = match rao_c {
            Some(_) => Some(rao_module(&res)?),
            None => None,
        };
        Ok((res, rao))
    })
}

fn rao_step(run: &mut Run, key: &str, c: &SubschemeRecord, expect: Option<BTreeMap<i32, i64>>) -> Option<RaoModuleRecord> {
    run.step("rao_module", |sb, rep| {
        sb.input(format!("{key} = {}", fmt_ideal(c.ideal())));
        let m = rao_module(c)?;
        sb.output(format!("HF = {}", fmt_table(&m.table)));
        if let Some(e) = expect {
            sb.check("Rao Hilbert function", m.table == e, format!("expected {}", fmt_table(&e)));
        }
        rep.hilbert(&format!("rao({key})"), m.table.clone());
        rep.certificate(&format!("rao({key})"), &m);
        Ok(m)
    })
}

/// Checks that a second link returned a translate of the original module.
fn translate_check(run: &mut Run, original: &RaoModuleRecord, after: &RaoModuleRecord) {
    run.step("rao_shift_equivalent", |sb, _| {
        sb.input(format!("Rao(C) = {}", fmt_table(&original.table)));
        sb.input(format!("Rao(C'') = {}", fmt_table(&after.table)));
        let h = table_shift(&original.table, &after.table);
        sb.output(format!("shift {h:?}"));
        sb.check("Rao(C'') is a translate of Rao(C)", h.is_some(), "");
        Ok(())
    });
}

fn ntype_steps(run: &mut Run, key: &str, c: &SubschemeRecord, y: &SubschemeRecord) -> Option<()> {
    let nt = run.step("n_type_resolution", |sb, rep| {
        sb.input(format!("C = {}", fmt_ideal(c.ideal())));
        let nt = n_type_resolution(c)?;
        sb.output(format!("L degrees {:?}, a = {}", nt.l.degrees(), nt.a));
        sb.check("contract H1 = M, H2 = 0, exact", nt.verify()?, "");
        rep.certificate(&format!("ntype({key})"), &nt);
        Ok(nt)
    })?;
    run.step("link_transform_ntype", |sb, rep| {
        sb.input(format!("Y = {}", fmt_ideal(y.ideal())));
        let t = link_transform_ntype(&nt, y)?;
        sb.output(format!("C' = {}", fmt_ideal(t.ntype.curve.ideal())));
        sb.check("residual agrees with link", t.residual_matches, "");
        sb.check("transformed contract", t.ntype.verify()?, "");
        sb.check("H1 reversed", t.reversed_shift.is_some(), format!("shift {:?}", t.reversed_shift));
        sb.check("middle extension exact", t.middle_extension, "");
        rep.certificate(&format!("ntype_link({key})"), &t);
        Ok(())
    })
}

fn skew_lines(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let a = p3();
    let max = opts.max_degree;
    let (c, builtin) = run.step("subscheme_record", |sb, rep| {
        let (c, builtin) = source_curve(opts, "C", &a, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"])?;
        describe(sb, "C", &c);
        let betti = c.betti_table();
        rep.betti("C", &betti);
        rep.hilbert("C", hf_table(&c, max));
        sb.check("resolution is a complex", c.resolution().is_complex(), "");
        sb.check("Euler characteristic identity", c.resolution().euler_series() == *c.hilbert_series(), "");
        sb.check("unmixed", c.is_unmixed(), "");
        if builtin {
            let expect = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 4), (2, 3, 4), (3, 4, 1)]);
            sb.check("Betti table (1; 4 quadrics; 4 cubics; 1 quartic)", betti == expect, "");
            sb.check("not ACM", !c.is_acm(), "");
            let l1 = SubschemeRecord::from_generators(&a, &["x0", "x1"])?;
            let l2 = SubschemeRecord::from_generators(&a, &["x2", "x3"])?;
            let meet = GradedIdeal::parse(&a.ring, &["x0", "x1", "x2", "x3"])?;
            let bad: Vec<i32> = (0..=max)
                .filter(|&n| {
                    c.hilbert_function(n)
                        != l1.hilbert_function(n) + l2.hilbert_function(n)
                            - crate::hilbert::hilbert_function(&meet, n)
                })
                .collect();
            sb.check("inclusion-exclusion Hilbert function", bad.is_empty(), if bad.is_empty() { String::new() } else { format!("degrees {bad:?}") });
        }
        Ok((c, builtin))
    })?;
    let expect = builtin.then(|| BTreeMap::from([(0, 1)]));
    let m = rao_step(run, "C", &c, expect)?;
    let y = match opts.input.as_ref().and_then(|d| d.ideal("Y")) {
        Some(i) => Some(SubschemeRecord::new(c.ambient(), i).ok()?),
        None if builtin => Some(SubschemeRecord::from_generators(&a, &["x0*x2", "x1*x3"]).ok()?),
        None => None,
    };
    let first = match &y {
        Some(y) => {
            let out = link_step(run, "link(C,Y)", &c, y, Some(&m))?;
            if builtin {
                run.step("residual ideal", |sb, _| {
                    let e = GradedIdeal::parse(&a.ring, &["x0*x1", "x0*x2", "x1*x3", "x2*x3"])?;
                    sb.check("C' = (x0x1, x0x2, x1x3, x2x3)", out.0.ideal() == &e, fmt_ideal(out.0.ideal()));
                    Ok(())
                });
            }
            out
        }
        None => ci_link_step(run, "link(C)", &c, (2, 2), opts.seed, Some(&m))?,
    };
    let second = ci_link_step(run, "link(C')", &first.0, (2, 2), opts.seed.wrapping_add(1), first.1.as_ref())?;
    translate_check(run, &m, second.1.as_ref()?);
    if let Some(y) = &y {
        ntype_steps(run, "C", &c, y)?;
    }
    if builtin {
        run.step("elementary_biliaison", |sb, rep| {
            let s = SubschemeRecord::from_generators(&a, &["x0*x3 - x1*x2"])?;
            sb.input(format!("S = {}, height 1", fmt_ideal(s.ideal())));
            let b = elementary_biliaison(&c, &s, 1, opts.seed, opts.retries)?;
            describe(sb, "C + H", &b.result);
            sb.check("degree 2 + 2 = 4", b.result.degree() == 4, "");
            sb.check("Rao module translated", b.rao_shift.is_some(), format!("shift {:?}", b.rao_shift));
            rep.certificate("biliaison(C).first", &b.first);
            rep.certificate("biliaison(C).second", &b.second);
            Ok(())
        });
    }
    Some(())
}

fn twisted_cubic_link(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let a = p3();
    let (c, builtin) = run.step("subscheme_record", |sb, rep| {
        let (c, builtin) = source_curve(opts, "C", &a, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"])?;
        describe(sb, "C", &c);
        let betti = c.betti_table();
        rep.betti("C", &betti);
        rep.hilbert("C", hf_table(&c, opts.max_degree));
        sb.check("Euler characteristic identity", c.resolution().euler_series() == *c.hilbert_series(), "");
        if builtin {
            let expect = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
            sb.check("Betti table (1; 3 quadrics; 2 cubics)", betti == expect, "");
            sb.check("ACM", c.is_acm(), "");
            sb.check("not a complete intersection", !c.is_ci(), "");
        }
        Ok((c, builtin))
    })?;
    let m = rao_step(run, "C", &c, builtin.then(BTreeMap::new))?;
    let y = match opts.input.as_ref().and_then(|d| d.ideal("Y")) {
        Some(i) => Some(SubschemeRecord::new(c.ambient(), i).ok()?),
        None if builtin => Some(SubschemeRecord::from_generators(&a, &["x0*x2 - x1^2", "x1*x3 - x2^2"]).ok()?),
        None => None,
    };
    if let Some(y) = &y {
        let (res, _) = link_step(run, "link(C,Y)", &c, y, Some(&m))?;
        if builtin {
            run.step("residual ideal", |sb, _| {
                let e = GradedIdeal::parse(&a.ring, &["x1", "x2"])?;
                sb.check("C' is the line (x1, x2)", res.ideal() == &e, fmt_ideal(res.ideal()));
                sb.check("degree 3 + 1 = 4", c.degree() + res.degree() == 4, "");
                Ok(())
            });
        }
        ntype_steps(run, "C", &c, y)?;
    }
    let (res, _) = ci_link_step(run, "link(C)", &c, (2, 2), opts.seed, Some(&m))?;
    if builtin {
        run.step("residual of a random link", |sb, _| {
            describe(sb, "C'", &res);
            sb.check("C' is a line", res.degree() == 1 && res.dimension() == 1 && res.is_ci(), "");
            Ok(())
        });
        run.step("elementary_biliaison", |sb, rep| {
            let line = SubschemeRecord::from_generators(&a, &["x0", "x1"])?;
            let s = SubschemeRecord::from_generators(&a, &["x0*x3 - x1*x2"])?;
            sb.input(format!("line {}, S = {}, height 1", fmt_ideal(line.ideal()), fmt_ideal(s.ideal())));
            let b = elementary_biliaison(&line, &s, 1, opts.seed, opts.retries)?;
            describe(sb, "L + H", &b.result);
            sb.check("degree 1 + 2 = 3", b.result.degree() == 3, "");
            sb.check("ACM with the Betti table of a twisted cubic", b.result.is_acm() && b.result.betti_table() == c.betti_table(), "");
            rep.certificate("biliaison(L).first", &b.first);
            rep.certificate("biliaison(L).second", &b.second);
            Ok(())
        });
    }
    Some(())
}

/// Maps the standard quartic's coordinates to coordinates in which the
/// quadric reads `x0x4 + x1x3 - 2x2^2`.
fn quartic_coordinates(u: &[u32], k: crate::field::PrimeField) -> Vec<u32> {
    let two = k.element(2).residue();
    vec![
        k.mul(two, k.sub(k.add(u[0], u[1]), u[2])),
        k.mul(two, u[1]),
        u[2],
        k.sub(u[4], u[2]),
        u[3],
    ]
}

/// The rational normal quartic on the quadric, as the 2x2 minors of the
/// standard quartic in transformed coordinates.
fn quartic_on_quadric(ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    let k = ring.field();
    let h = k.inv(2).expect("odd characteristic");
    let images: Vec<Polynomial> = [
        format!("{h}*x0 - {h}*x1 + x2"),
        format!("{h}*x1"),
        "x2".to_string(),
        "x4".to_string(),
        "x3 + x2".to_string(),
    ]
    .iter()
    .map(|s| poly(ring, s))
    .collect();
    let x = |i: usize| Polynomial::var(ring, i);
    let mut minors = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let m = &(&x(i) * &x(j + 1)) - &(&x(i + 1) * &x(j));
            minors.push(m.substitute(&images));
        }
    }
    minors
}

/// A secant line of the quartic lying on the quadric: two parameters `a, b`
/// with `B(p(a), p(b)) = 0` for the polar form `B`.
fn find_secant(ring: &Arc<PolyRing>, seed: u64, retries: usize) -> Result<(u32, u32, Vec<Polynomial>)> {
    let k = ring.field();
    let p = k.characteristic();
    let point = |t: u32| {
        let mut u = vec![1u32; 5];
        for i in 1..5 {
            u[i] = k.mul(u[i - 1], t);
        }
        quartic_coordinates(&u, k)
    };
    let four = k.element(4).residue();
    let polar = |u: &[u32], v: &[u32]| {
        let s = k.add(
            k.add(k.mul(u[0], v[4]), k.mul(u[4], v[0])),
            k.add(k.mul(u[1], v[3]), k.mul(u[3], v[1])),
        );
        k.sub(s, k.mul(four, k.mul(u[2], v[2])))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        let a = rng.gen_range(1..p);
        let u = point(a);
        if let Some(b) = (0..p).find(|&b| b != a && polar(&u, &point(b)) == 0) {
            let v = point(b);
            let forms = nullspace(k, &[u, v], 5)
                .into_iter()
                .map(|c| {
                    let terms = (0..5)
                        .filter(|&i| c[i] != 0)
                        .map(|i| (Monomial::var(i), c[i]))
                        .collect();
                    Polynomial::from_terms(ring, terms)
                })
                .collect();
            return Ok((a, b, forms));
        }
    }
    Err(Error::Genericity(format!("no secant line on the quadric found within {retries} attempts")))
}

fn quadric_quintic(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let x = hypersurface(SMOOTH_QUADRIC);
    let ring = x.ring.clone();
    let q = x.modulus.clone().expect("hypersurface");
    let c = run.step("rational normal quartic", |sb, rep| {
        let minors = quartic_on_quadric(&ring);
        let i = GradedIdeal::new(&ring, minors)?;
        sb.check("quartic lies on X", i.contains(&q), "");
        let c = SubschemeRecord::new(&x, i)?.with_label("C");
        describe(sb, "C", &c);
        sb.check("degree 4, dimension 1, ACM", c.degree() == 4 && c.dimension() == 1 && c.is_acm(), "");
        rep.betti("C", &c.betti_table());
        Ok(c)
    })?;
    let (l, y) = run.step("secant line on X", |sb, rep| {
        let (a, b, forms) = find_secant(&ring, opts.seed, opts.retries)?;
        sb.output(format!("chord through the parameters t = {a} and t = {b}"));
        let il = GradedIdeal::new(&ring, forms)?;
        sb.check("line lies on X", il.contains(&q), "");
        let l = SubschemeRecord::new(&x, il.clone())?.with_label("L");
        describe(sb, "L", &l);
        let meet = SubschemeRecord::new(&p4(), c.ideal().sum(&il))?;
        sb.check("L meets C in two points", meet.dimension() == 0 && meet.degree() == 2, format!("degree {}", meet.degree()));
        let y = SubschemeRecord::new(&x, intersect(c.ideal(), l.ideal())?)?.with_label("Y");
        describe(sb, "Y = C + L", &y);
        let betti = y.betti_table();
        rep.betti("Y", &betti);
        rep.hilbert("Y", hf_table(&y, opts.max_degree));
        let expect = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 5), (2, 3, 5), (3, 5, 1)]);
        sb.check("Betti table (1, 5, 5, 1)", betti == expect, "");
        sb.check("symmetric", betti.is_symmetric(), "");
        sb.check("arithmetically Gorenstein", y.is_ag(), "");
        sb.check("degree 5", y.degree() == 5, "");
        sb.check("codimension 2 in X", y.codimension_in_x() == 2, "");
        Ok((l, y))
    })?;
    let (res, _) = link_step(run, "link(C,Y)", &c, &y, None)?;
    run.step("quartic links to the line", |sb, _| {
        sb.check("C' = L", res.ideal() == l.ideal(), fmt_ideal(res.ideal()));
        Ok(())
    });
    let (back, _) = link_step(run, "link(L,Y)", &l, &y, None)?;
    run.step("line links to the quartic", |sb, _| {
        sb.check("L' = C", back.ideal() == c.ideal(), fmt_ideal(back.ideal()));
        Ok(())
    });
    ntype_steps(run, "C", &c, &y)
}

fn line_conic_line(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let x = hypersurface(SMOOTH_QUADRIC);
    let (c, builtin) = run.step("subscheme_record", |sb, _| {
        let (c, builtin) = source_curve(opts, "C", &x, &["x0", "x1", "x2"])?;
        describe(sb, "C", &c);
        sb.check("codimension 2 in X", c.codimension_in_x() == 2, "");
        Ok((c, builtin))
    })?;
    let m = rao_step(run, "C", &c, builtin.then(BTreeMap::new))?;
    let (res, _) = ci_link_step(run, "link(C)", &c, (1, 1), opts.seed, Some(&m))?;
    if builtin {
        run.step("residual line", |sb, _| {
            sb.check("C' is a line", res.degree() == 1 && res.dimension() == 1, "");
            sb.check("C' differs from C", res.ideal() != c.ideal(), "");
            sb.check("degrees 1 + 1 = 2", c.degree() + res.degree() == 2, "");
            Ok(())
        });
    }
    Some(())
}

fn lesperance_ideal(ring: &Arc<PolyRing>) -> Result<GradedIdeal> {
    let a = GradedIdeal::parse(ring, &["x0", "x1", "x4^2 - x2*x3"])?;
    let b = GradedIdeal::parse(ring, &["x2", "x3", "x4^2 - x0*x1"])?;
    intersect(&a, &b)
}

fn lesperance(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let a = p4();
    let c = run.step("subscheme_record", |sb, rep| {
        let c = SubschemeRecord::new(&a, lesperance_ideal(&a.ring)?)?.with_label("C");
        describe(sb, "C", &c);
        sb.check("two conics: degree 4, dimension 1", c.degree() == 4 && c.dimension() == 1, "");
        rep.betti("C", &c.betti_table());
        Ok(c)
    })?;
    let m = rao_step(run, "C", &c, Some(BTreeMap::from([(0, 1), (1, 1)])))?;
    run.step("annihilator", |sb, _| {
        let ann = annihilator(&m.module)?;
        sb.output(format!("ann = {}", fmt_ideal(&ann)));
        let e = GradedIdeal::parse(&a.ring, &["x0", "x1", "x2", "x3", "x4^2"])?;
        sb.check("ann(M) = I_P + R_{>=2}", ann == e, "");
        Ok(())
    });
    let x = hypersurface(CONE);
    let cx = run.step("curve on the quadric cone", |sb, _| {
        let cx = SubschemeRecord::new(&x, c.ideal().clone())?;
        describe(sb, "C", &cx);
        sb.check("C lies on X", c.ideal().contains(x.modulus.as_ref().expect("cone")), "");
        sb.check("codimension 2 in X", cx.codimension_in_x() == 2, "");
        Ok(cx)
    })?;
    let first = ci_link_step(run, "link(C) on the cone", &cx, (2, 2), opts.seed, Some(&m))?;
    let second = ci_link_step(run, "link(C') on the cone", &first.0, (2, 2), opts.seed.wrapping_add(1), first.1.as_ref())?;
    translate_check(run, &m, second.1.as_ref()?);
    Some(())
}

fn rows(ring: &Arc<PolyRing>, m: &[&[&str]]) -> Vec<Vec<Polynomial>> {
    m.iter().map(|r| r.iter().map(|s| poly(ring, s)).collect()).collect()
}

fn hypersurface_module(ring: &Arc<PolyRing>, f: &Polynomial, tgt: Vec<i32>, r: &[&[&str]]) -> Result<ModulePresentation> {
    let map = GradedMap::from_rows_with_target(ring, FreeGradedModule::from_degrees(tgt), rows(ring, r), 0)?;
    Ok(ModulePresentation::over_hypersurface(map, f))
}

fn mat_mul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let ring = a[0][0].ring().clone();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    (0..b.len()).fold(Polynomial::zero(&ring), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

fn cone_planes(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let x = hypersurface(CONE);
    let ring = x.ring.clone();
    let f = x.modulus.clone().expect("cone");
    let alpha: &[&[&str]] = &[&["x3", "x1"], &["-x2", "-x0"]];
    let beta: &[&[&str]] = &[&["x3", "x2"], &["-x1", "-x0"]];
    let mut records = Vec::new();
    for (name, gens, r, tgt, twist) in [
        ("I_D", ["x0", "x1"], alpha, vec![1, 1], 0),
        ("I_E(1)", ["x0", "x2"], beta, vec![0, 0], 1),
    ] {
        let rec = run.step("acm_module_check", |sb, rep| {
            let m = hypersurface_module(&ring, &f, tgt, r)?;
            sb.input(format!("{name} = coker {:?} over X", r));
            let plane = SubschemeRecord::from_generators(&x, &gens)?;
            let rx = structure_module(&x, 0);
            let bad: Vec<i32> = (-2..=opts.max_degree)
                .filter(|&n| m.hilbert_function(n) != rx.hilbert_function(n + twist) - plane.hilbert_function(n + twist))
                .collect();
            sb.check("presents the ideal of the plane", bad.is_empty(), if bad.is_empty() { String::new() } else { format!("degrees {bad:?}") });
            let out = acm_module_check(&m)?;
            let Some(rec) = out.into_record() else {
                sb.check("ACM", false, "");
                return Err(Error::Construction(format!("{name} is not ACM")));
            };
            sb.check("ACM", true, "");
            sb.check("rank 1", rec.rank == 1, format!("rank {}", rec.rank));
            sb.check("H1 = H2 = 0", rec.h1.is_empty() && rec.h2.is_empty(), "");
            rep.betti(name, &rec.betti_table());
            rep.certificate(&format!("mf({name})"), &mf_verify(&rec.mf));
            Ok(rec)
        })?;
        run.step("rank1_acm_to_surface", |sb, _| {
            let s = rank1_acm_to_surface(&rec, (-2, 2))?;
            describe(sb, "S", &s);
            sb.check("a plane", s.degree() == 1 && s.dimension() == 2, "");
            Ok(())
        });
        records.push(rec);
    }
    run.step("extension_module", |sb, rep| {
        let a = records[0].module.clone();
        let b = records[1].module.clone();
        let beta_rows = rows(&ring, beta);
        let alpha_rows = rows(&ring, alpha);
        let d = rows(&ring, &[&["0", "1"], &["1", "0"]]);
        let prod = mat_mul(&mat_mul(&beta_rows, &d), &alpha_rows);
        let fi = GradedIdeal::new(&ring, vec![f.clone()])?;
        sb.check("beta D alpha = 0 mod f", prod.iter().flatten().all(|p| fi.contains(p)), "D = [[0,1],[1,0]]");
        // c = [D^-1 | -D^-1 adj(beta)] vanishes on the syzygies (adj beta; I)
        let adj = vec![
            vec![beta_rows[1][1].clone(), -&beta_rows[0][1]],
            vec![-&beta_rows[1][0], beta_rows[0][0].clone()],
        ];
        let c2: Vec<Vec<Polynomial>> = mat_mul(&d, &adj).iter().map(|r| r.iter().map(|p| -p).collect()).collect();
        let cols: Vec<Vec<Polynomial>> = (0..2)
            .map(|j| d.iter().map(|r| r[j].clone()).collect())
            .chain((0..2).map(|j| c2.iter().map(|r| r[j].clone()).collect()))
            .collect();
        let cocycle = GradedMap::new(&ring, b.relations().clone(), a.generators().clone(), cols)?;
        let out = extension_module(&ExtensionClass { a, b, cocycle })?;
        let rx = structure_module(&x, 0);
        let o2 = free_resolution(&rx.direct_sum(&rx), ring.nvars() + 1)?.betti_table();
        rep.betti("E", &out.betti);
        sb.check("Betti table of O_X^2", out.betti == o2, "");
        sb.check("non-split", !out.split, "");
        sb.check("HF-exact on [-10, 10]", out.hf_additive, "");
        rep.certificate("extension", &out);
        Ok(())
    });
    Some(())
}

fn spinor(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let ring = PolyRing::standard(5);
    let rec = run.step("knoerrer spinor factorization", |sb, rep| {
        let base = MatrixFactorization::from_product(&poly(&ring, "x0"), &poly(&ring, "x1"))?;
        let four = knoerrer_double_cover(&knoerrer_xy(&base, 2, 3)?, 4)?;
        sb.output(format!("f = {}", four.f));
        let r = mf_verify(&four);
        check_mf(sb, "4x4", &r, Some(2));
        rep.certificate("mf(spinor)", &r);
        let m = ModulePresentation::over_hypersurface(four.phi.clone(), &four.f);
        let out = acm_module_check(&m)?;
        let Some(rec) = out.into_record() else {
            sb.check("ACM", false, "");
            return Err(Error::Construction("spinor module is not ACM".into()));
        };
        sb.check("ACM", true, "");
        sb.check("rank 2", rec.rank == 2, format!("rank {}", rec.rank));
        rep.betti("spinor", &rec.betti_table());
        Ok(rec)
    })?;
    let desc = RingDescriptor::new(ring.clone()).with_modulus(rec.mf.f.clone()).ok()?;
    run.step("2-periodicity", |sb, _| {
        let dual = syzygy_dual(&rec.module);
        let t = free_resolution(&dual, ring.nvars() + 1)?.betti_table();
        let h = t.translate_to(&rec.betti_table());
        sb.check("syzygy module is a Betti translate", h.is_some(), format!("shift {h:?}"));
        Ok(())
    });
    let y = run.step("serre_subscheme_from_section", |sb, rep| {
        let a = (-4..=4)
            .find(|&a| !rec.module.basis_in_degree(a).is_empty())
            .ok_or_else(|| Error::Construction("no sections in [-4, 4]".into()))?;
        sb.input(format!("minimal section degree {a}"));
        let (y, b) = serre_subscheme_from_section(&rec, a, opts.seed)?;
        describe(sb, "Y", &y);
        sb.output(format!("b = {b}"));
        let line = SubschemeRecord::from_generators(&desc, &["x0", "x2", "x4"])?;
        sb.check("Hilbert function of a line", y.hilbert_series() == line.hilbert_series(), "");
        sb.check("arithmetically Gorenstein, codimension 2 in X", y.is_ag() && y.codimension_in_x() == 2, "");
        rep.hilbert("Y", hf_table(&y, opts.max_degree));
        Ok(y)
    })?;
    run.step("serre_sheaf_from_ag", |sb, rep| {
        let s = serre_sheaf_from_ag(&y)?;
        sb.output(format!("a = {}", s.a));
        sb.check("HF-exact", s.hf_exact, "");
        let r = s.record.as_ref().ok_or_else(|| Error::Construction("no ACM record".into()))?;
        let t = r.betti_table();
        rep.betti("serre(Y)", &t);
        let h = t.translate_to(&rec.betti_table());
        sb.check("Betti translate of the spinor module", h.is_some(), format!("shift {h:?}"));
        Ok(())
    });
    Some(())
}

fn check_mf(sb: &mut StepBuilder, label: &str, r: &MfReport, power: Option<usize>) {
    let where_ = r
        .offending
        .iter()
        .map(|(m, i, j)| format!("{m}[{i},{j}]"))
        .collect::<Vec<_>>()
        .join(", ");
    sb.check(&format!("{label}: phi psi = psi phi = f id"), r.phi_psi && r.psi_phi, where_);
    sb.check(&format!("{label}: det phi det psi = c f^n"), r.determinant_product, "");
    if let Some(p) = power {
        sb.check(
            &format!("{label}: det phi = c f^{p}"),
            r.determinant_power == Some(p),
            format!("found {:?}", r.determinant_power),
        );
    }
    sb.check(&format!("{label}: valid"), r.valid, "");
}

fn knoerrer_tower(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    if let Some(doc) = &opts.input {
        if let (Some(phi), Some(psi), Some(f)) = (doc.matrix("phi"), doc.matrix("psi"), &doc.modulus) {
            run.step("user matrix factorization", |sb, rep| {
                sb.input(format!("f = {f}"));
                let mf = MatrixFactorization::from_rows(f, phi.rows(), psi.rows(), phi.target().degrees())?;
                let r = mf_verify(&mf);
                check_mf(sb, "user", &r, None);
                rep.certificate("mf(user)", &r);
                Ok(())
            });
        }
    }
    let ring = PolyRing::standard(5);
    let base = run.step("matrix factorization 1x1", |sb, rep| {
        let base = MatrixFactorization::from_product(&poly(&ring, "x0"), &poly(&ring, "x1"))?;
        sb.output(format!("f = {}", base.f));
        let r = mf_verify(&base);
        check_mf(sb, "1x1", &r, None);
        rep.certificate("mf(1x1)", &r);
        Ok(base)
    })?;
    let mut tower = Vec::new();
    for (label, key, prev, build) in [
        ("2x2 (xy)", "mf(2x2,xy)", None, 1usize),
        ("4x4 (xy, x^2)", "mf(4x4,xy)", Some(0usize), 2),
        ("2x2 (x^2)", "mf(2x2,sq)", None, 1),
        ("4x4 (x^2, x^2)", "mf(4x4,sq)", Some(2), 2),
    ] {
        let step = run.step("knoerrer", |sb, rep| {
            let mf = match (key, prev) {
                ("mf(2x2,xy)", _) => knoerrer_xy(&base, 2, 3)?,
                ("mf(2x2,sq)", _) => knoerrer_double_cover(&base, 2)?,
                (_, Some(i)) => {
                    let from: &MatrixFactorization = &tower[i];
                    let v = if key == "mf(4x4,xy)" { 4 } else { 3 };
                    knoerrer_double_cover(from, v)?
                }
                _ => unreachable!("fixed table"),
            };
            sb.output(format!("f = {}", mf.f));
            let r = mf_verify(&mf);
            check_mf(sb, label, &r, Some(build));
            let done = mf_complete(&mf.phi, &mf.f)?;
            sb.check(&format!("{label}: mf_complete recovers psi"), done.psi.rows() == mf.psi.rows(), "");
            rep.certificate(key, &r);
            Ok(mf)
        })?;
        tower.push(step);
    }
    Some(())
}

fn rao_roundtrip(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let a = p3();
    let cone = hypersurface(CONE);
    let cases: Vec<(&str, RingDescriptor, GradedIdeal)> = vec![
        ("k", a.clone(), GradedIdeal::parse(&a.ring, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]).ok()?),
        ("lesperance", cone.clone(), lesperance_ideal(&cone.ring).ok()?),
    ];
    for (name, desc, ideal) in cases {
        let m = run.step("rao_module", |sb, rep| {
            let c = SubschemeRecord::new(&desc, ideal)?;
            sb.input(format!("source {}", fmt_ideal(c.ideal())));
            let m = rao_module(&c)?;
            sb.output(format!("M = {name}, HF {}", fmt_table(&m.table)));
            rep.hilbert(&format!("M({name})"), m.table.clone());
            Ok(m)
        })?;
        run.step("curve_from_rao_module", |sb, rep| {
            let out = curve_from_rao_module(&m, &desc, opts.seed, opts.retries, 0)?;
            describe(sb, "C", &out.curve);
            sb.output(format!("attempts {}, shift {}", out.attempts, out.shift));
            let h = rao_shift_equivalent(&m, &out.rao);
            sb.check("Rao module is a translate of M", h.is_some(), format!("Rao(C) = {}", fmt_table(&out.rao.table)));
            sb.check("codimension 2 in X", out.curve.codimension_in_x() == 2, "");
            rep.hilbert(&format!("rao(C_{name})"), out.rao.table.clone());
            Ok(())
        });
    }
    Some(())
}

fn cubic_surface_points(run: &mut Run) -> Option<()> {
    let opts = run.opts;
    let ring = PolyRing::standard(4);
    let f = poly(&ring, "x0^3 + x1^3 + x2^3 + x3^3");
    let x = RingDescriptor::new(ring.clone()).with_modulus(f.clone()).ok()?;
    let z = run.step("points on the Fermat cubic", |sb, _| {
        let pts: [&[&str]; 4] = [
            &["x0 + x1", "x2", "x3"],
            &["x0 + x2", "x1", "x3"],
            &["x0 + x3", "x1", "x2"],
            &["x0", "x1 + x2", "x3"],
        ];
        let mut acc = GradedIdeal::parse(&ring, pts[0])?;
        for p in &pts[1..] {
            acc = intersect(&acc, &GradedIdeal::parse(&ring, p)?)?;
        }
        sb.check("points lie on X", acc.contains(&f), "");
        let z = SubschemeRecord::new(&x, acc)?;
        describe(sb, "Z", &z);
        sb.check("4 points", z.dimension() == 0 && z.degree() == 4, "");
        Ok(z)
    })?;
    let (z1, _) = ci_link_step(run, "link(Z)", &z, (2, 2), opts.seed, None)?;
    run.step("residual points", |sb, _| {
        sb.check("8 points", z1.dimension() == 0 && z1.degree() == 8, format!("degree {}", z1.degree()));
        Ok(())
    });
    let (z2, _) = ci_link_step(run, "link(Z')", &z1, (2, 2), opts.seed.wrapping_add(1), None)?;
    run.step("residual points", |sb, _| {
        sb.check("4 points", z2.dimension() == 0 && z2.degree() == 4, format!("degree {}", z2.degree()));
        Ok(())
    });
    Some(())
}
