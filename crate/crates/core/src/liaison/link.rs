//! Linkage by ideal quotients, linkage certificates, links inside a
//! hypersurface and elementary biliaison.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rao::{rao_module, rao_shift_equivalent};
use super::record::SubschemeRecord;
use crate::error::{usage, Error, Result};
use crate::groebner::{ideal_quotient, intersect, GradedIdeal};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkKind {
    CiLink,
    GLink,
}

/// Evidence for one link `C ~ C'` by `Y`.
#[derive(Clone, Debug, Serialize)]
pub struct LinkageCertificate {
    pub kind: LinkKind,
    pub in_x: bool,
    pub ideal_c: Vec<String>,
    pub ideal_y: Vec<String>,
    pub ideal_residual: Vec<String>,
    pub y_betti_symmetric: bool,
    pub y_last_betti: usize,
    pub y_contained_in_c: bool,
    pub codimensions_match: bool,
    pub c_unmixed: bool,
    pub bidual: bool,
    pub intersection_equals_y: bool,
    pub degrees: [i64; 3],
    pub degree_additive: bool,
    pub valid: bool,
    pub failures: Vec<String>,
}

fn gens_text(i: &GradedIdeal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

/// Links `C` by the arithmetically Gorenstein scheme `Y ⊆ C`: the residual
/// has ideal `(I_Y : I_C)`. Failed conditions invalidate the certificate
/// and are named in it.
pub fn link(c: &SubschemeRecord, y: &SubschemeRecord) -> Result<(SubschemeRecord, LinkageCertificate)> {
    if c.ring() != y.ring() && **c.ring() != **y.ring() {
        return usage("link of schemes in different rings");
    }
    let mut failures = Vec::new();
    let contained = c.ideal().contains_ideal(y.ideal());
    if !contained {
        failures.push("I_Y ⊆ I_C".to_string());
    }
    let y_ag = y.is_ag();
    if !y_ag {
        failures.push("Y arithmetically Gorenstein".to_string());
    }
    let codim = c.codimension() == y.codimension();
    if !codim {
        failures.push("codim C = codim Y".to_string());
    }
    let unmixed = c.is_unmixed();
    if !unmixed {
        failures.push("C unmixed".to_string());
    }
    let q = ideal_quotient(y.ideal(), c.ideal())?;
    let residual = SubschemeRecord::new(y.ambient(), q)?;
    let back = ideal_quotient(y.ideal(), residual.ideal())?;
    let bidual = back == *c.ideal();
    if !bidual {
        failures.push("(I_Y : I_C') = I_C".to_string());
    }
    let inter = intersect(c.ideal(), residual.ideal())?;
    let intersection_equals_y = inter == *y.ideal();
    let degrees = [c.degree(), residual.degree(), y.degree()];
    let degree_additive = degrees[0] + degrees[1] == degrees[2];
    if !degree_additive {
        failures.push("deg C + deg C' = deg Y".to_string());
    }
    let yb = y.betti_table();
    let cert = LinkageCertificate {
        kind: if y.is_ci() { LinkKind::CiLink } else { LinkKind::GLink },
        in_x: c.modulus().is_some(),
        ideal_c: gens_text(c.ideal()),
        ideal_y: gens_text(y.ideal()),
        ideal_residual: gens_text(residual.ideal()),
        y_betti_symmetric: yb.is_symmetric(),
        y_last_betti: yb.total(yb.length()),
        y_contained_in_c: contained,
        codimensions_match: codim,
        c_unmixed: unmixed,
        bidual,
        intersection_equals_y,
        degrees,
        degree_additive,
        valid: failures.is_empty(),
        failures,
    };
    Ok((residual, cert))
}

/// A uniformly random element of the degree-`d` part of an ideal.
pub fn random_element(i: &GradedIdeal, d: u32, rng: &mut ChaCha8Rng) -> Option<Polynomial> {
    use rand::Rng;
    let basis = i.degree_part(d);
    if basis.is_empty() {
        return None;
    }
    let k = i.ring().field();
    let mut acc = Polynomial::zero(i.ring());
    for b in &basis {
        let c: u32 = rng.gen_range(0..k.characteristic());
        acc = &acc + &b.scale(c);
    }
    Some(acc)
}

/// Links `C ⊂ X` by a complete intersection `Y = X ∩ F_a ∩ F_b` with random
/// `F_a, F_b ∈ I_C`. Returns `(Y, C', certificate)`.
pub fn ci_link_in_x(
    c: &SubschemeRecord,
    degrees: (u32, u32),
    seed: u64,
    retries: usize,
) -> Result<(SubschemeRecord, SubschemeRecord, LinkageCertificate)> {
    let ring = c.ring().clone();
    for attempt in 0..retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let (Some(fa), Some(fb)) = (
            random_element(c.ideal(), degrees.0, &mut rng),
            random_element(c.ideal(), degrees.1, &mut rng),
        ) else {
            return usage(format!(
                "I_C has no elements in degrees {} and {}",
                degrees.0, degrees.1
            ));
        };
        let mut gens = vec![fa, fb];
        if let Some(f) = c.modulus() {
            gens.insert(0, f.clone());
        }
        let y = SubschemeRecord::new(c.ambient(), GradedIdeal::from_homogeneous(&ring, gens))?;
        if y.codimension() != c.codimension() || !y.is_ci() {
            continue;
        }
        let (res, cert) = link(c, &y)?;
        if cert.valid {
            return Ok((y, res, cert));
        }
    }
    Err(Error::Genericity(format!(
        "no complete intersection of degrees ({}, {}) linked the curve within {} attempts",
        degrees.0, degrees.1, retries
    )))
}

/// Result of an elementary biliaison realized as two links on a surface.
#[derive(Clone, Debug)]
pub struct Biliaison {
    pub first: LinkageCertificate,
    pub second: LinkageCertificate,
    pub intermediate: SubschemeRecord,
    pub result: SubschemeRecord,
    pub link_degree: u32,
    /// Measured Rao shift `h` with `M_{C'} ≅ M_C(-h)` (translation proxy).
    pub rao_shift: Option<i32>,
}

fn smallest_new_degree(c: &GradedIdeal, s: &GradedIdeal, max: u32) -> Option<u32> {
    (1..=max).find(|&d| c.degree_part(d).len() > s.degree_part(d).len())
}

/// Links `C` on `S` by `S ∩ F_d` and the residual by `S ∩ F_{d+m}`.
pub fn elementary_biliaison(
    c: &SubschemeRecord,
    s: &SubschemeRecord,
    m: u32,
    seed: u64,
    retries: usize,
) -> Result<Biliaison> {
    if !c.ideal().contains_ideal(s.ideal()) {
        return usage("the surface does not contain the curve");
    }
    let d = smallest_new_degree(c.ideal(), s.ideal(), 12)
        .ok_or_else(|| Error::Usage("no form of degree ≤ 12 cuts the curve on the surface".into()))?;
    for attempt in 0..retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let f1 = random_element(c.ideal(), d, &mut rng).expect("nonempty degree part");
        let y1 = SubschemeRecord::new(c.ambient(), s.ideal().with_generators(&[f1]))?;
        let (c1, cert1) = link(c, &y1)?;
        if !cert1.valid {
            continue;
        }
        let Some(f2) = random_element(c1.ideal(), d + m, &mut rng) else {
            continue;
        };
        if s.ideal().contains(&f2) {
            continue;
        }
        let y2 = SubschemeRecord::new(c.ambient(), s.ideal().with_generators(&[f2]))?;
        let (c2, cert2) = link(&c1, &y2)?;
        if !cert2.valid {
            continue;
        }
        let rao_shift = match (rao_module(c), rao_module(&c2)) {
            (Ok(a), Ok(b)) => rao_shift_equivalent(&a, &b),
            _ => None,
        };
        return Ok(Biliaison {
            first: cert1,
            second: cert2,
            intermediate: c1,
            result: c2,
            link_degree: d,
            rao_shift,
        });
    }
    Err(Error::Genericity(format!(
        "elementary biliaison of height {m} failed within {retries} attempts"
    )))
}
