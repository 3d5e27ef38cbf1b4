//! N-type resolutions `0 → L → N → I_C(a) → 0` with `L` free over the
//! ambient hypersurface ring, their behaviour under a link, and curves
//! built from a prescribed Rao module.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::link::{link, random_element, LinkageCertificate};
use super::rao::{rao_module, rao_shift_equivalent, table_shift, RaoModuleRecord};
use super::record::SubschemeRecord;
use crate::error::{Error, Result};
use crate::groebner::{lift, Column, GradedIdeal};
use crate::homology::{
    dual_generators, dual_over, fibered_sum, graded_dual, hf_exact, hom_degree, ideal_module_generators,
    modulus_columns, presentation_of_ideal, rank_over, relations_over, resolution_over, reverse_table,
    sheaf_cohomology_module, subquotient, syzygies_over, FreeGradedModule, GradedMap, ModulePresentation,
};
use crate::linalg::solve_columns;
use crate::mcm::{ext1_cocycles, serre_sheaf_from_ag, structure_module, universal_extension_map};
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

/// Degree window for Hilbert-function exactness checks.
const WINDOW: (i32, i32) = (-10, 10);

/// `0 → L → N → I_C(a) → 0` with the maps given on generators.
#[derive(Clone, Debug)]
pub struct NTypeResolution {
    pub curve: SubschemeRecord,
    /// `N`, minimally presented over the ambient ring (with the modulus).
    pub module: ModulePresentation,
    pub l: FreeGradedModule,
    /// Images of the generators of `L` in the generators of `N`.
    pub l_map: GradedMap,
    /// Image in `I_C(a)` of each generator of `N` (a polynomial of degree
    /// `deg + a`).
    pub projection: Vec<Polynomial>,
    pub a: i32,
    /// `H^1_*(N)`, `None` when not of finite length.
    pub h1: Option<BTreeMap<i32, i64>>,
    pub h2: Option<BTreeMap<i32, i64>>,
    pub hf_exact: bool,
}

#[derive(Serialize)]
struct NTypeSummary<'a> {
    a: i32,
    l_degrees: &'a [i32],
    n_generators: &'a [i32],
    h1: Option<Vec<(i32, i64)>>,
    h2: Option<Vec<(i32, i64)>>,
    hf_exact: bool,
}

impl Serialize for NTypeResolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flat = |t: &Option<BTreeMap<i32, i64>>| t.as_ref().map(|t| t.iter().map(|(&a, &b)| (a, b)).collect());
        NTypeSummary {
            a: self.a,
            l_degrees: self.l.degrees(),
            n_generators: self.module.generators().degrees(),
            h1: flat(&self.h1),
            h2: flat(&self.h2),
            hf_exact: self.hf_exact,
        }
        .serialize(s)
    }
}

impl NTypeResolution {
    /// `H^1_*(N) = H^1_*(I_C(a))`, the given Rao table moved by `-a`,
    /// `H^2_*(N) = 0` and the sequence is exact on Hilbert functions.
    pub fn satisfies_contract(&self, rao: &BTreeMap<i32, i64>) -> bool {
        let moved: BTreeMap<i32, i64> = rao.iter().map(|(&d, &v)| (d - self.a, v)).collect();
        self.hf_exact && self.h1.as_ref() == Some(&moved) && self.h2.as_ref().is_some_and(|t| t.is_empty())
    }

    /// The contract against the Rao module of the curve itself.
    pub fn verify(&self) -> Result<bool> {
        let rao = rao_module(&self.curve)?;
        Ok(self.satisfies_contract(&rao.table))
    }
}

fn free_over(desc: &RingDescriptor, degrees: Vec<i32>) -> ModulePresentation {
    let f0 = FreeGradedModule::from_degrees(degrees);
    let zero = GradedMap::zero(&desc.ring, FreeGradedModule::zero(), f0);
    match &desc.modulus {
        Some(f) => ModulePresentation::over_hypersurface(zero, f),
        None => ModulePresentation::new(zero),
    }
}

fn with_modulus(map: GradedMap, f: Option<&Polynomial>) -> ModulePresentation {
    match f {
        Some(f) => ModulePresentation::over_hypersurface(map, f),
        None => ModulePresentation::new(map),
    }
}

fn table(n: &ModulePresentation, i: usize) -> Result<Option<BTreeMap<i32, i64>>> {
    let d = sheaf_cohomology_module(n, i)?;
    Ok(d.finite.then(|| d.finite_table()))
}

fn assemble(
    curve: SubschemeRecord,
    full: ModulePresentation,
    l: FreeGradedModule,
    old_projection: Vec<Polynomial>,
    a: i32,
) -> Result<NTypeResolution> {
    let ring = curve.ring().clone();
    let nl = l.rank();
    let tracked = full.minimalize_tracked();
    let module = tracked.module;
    let projection: Vec<Polynomial> = tracked.kept.iter().map(|&k| old_projection[k].clone()).collect();
    let l_map = GradedMap::from_columns(
        &ring,
        l.clone(),
        module.generators().clone(),
        tracked.to_new.columns()[..nl].to_vec(),
    );
    let lmod = free_over(curve.ambient(), l.degrees().to_vec());
    let ic = presentation_of_ideal(curve.ideal(), curve.modulus(), true)?.twist(a);
    let exact = hf_exact(&lmod.hilbert_series(), &module.hilbert_series(), &ic.hilbert_series(), WINDOW.0, WINDOW.1);
    Ok(NTypeResolution {
        h1: table(&module, 1)?,
        h2: table(&module, 2)?,
        curve,
        module,
        l,
        l_map,
        projection,
        a,
        hf_exact: exact,
    })
}

/// The N-type resolution obtained as the universal extension of `I_C` by
/// the generators of `Ext^1(I_C, R_X)`; here `a = 0`.
pub fn n_type_resolution(c: &SubschemeRecord) -> Result<NTypeResolution> {
    let f = c.modulus();
    let ring = c.ring().clone();
    let i = presentation_of_ideal(c.ideal(), f, true)?;
    let gens = ideal_module_generators(c.ideal(), f);
    if gens.len() != i.generators().rank() {
        return Err(Error::Construction("ideal presentation changed its generators".into()));
    }
    let (cocycles, degrees, d1) = ext1_cocycles(&i, f);
    let map = universal_extension_map(&cocycles, &degrees, &d1);
    let l = FreeGradedModule::from_degrees(degrees.iter().map(|e| -e).collect());
    let old_projection: Vec<Polynomial> = std::iter::repeat(Polynomial::zero(&ring))
        .take(cocycles.len())
        .chain(gens)
        .collect();
    let out = assemble(c.clone(), with_modulus(map, f), l, old_projection, 0)?;
    if !out.hf_exact {
        return Err(Error::Construction("N-type sequence is not exact on Hilbert functions".into()));
    }
    Ok(out)
}

/// `(N^σ)^∨` for the first syzygy module `N^σ = ker(F → N)` of a minimal
/// free cover.
pub fn syzygy_dual(n: &ModulePresentation) -> ModulePresentation {
    let f = n.modulus();
    let ring = n.ring().clone();
    let d1 = relations_over(n, f);
    if d1.ncols() == 0 {
        return ModulePresentation::zero(&ring);
    }
    let d2 = syzygies_over(&d1, f);
    let sigma = with_modulus(d2, f);
    dual_over(&sigma, f)
}

/// A twisted ideal `J(d)` isomorphic to a rank-one module `Q`, read off the
/// lowest-degree homomorphism `Q → R_X`.
#[derive(Clone, Debug)]
pub struct ExtractedIdeal {
    /// The saturated ideal (with the modulus).
    pub ideal: GradedIdeal,
    pub twist: i32,
    /// Image of each generator of `Q`.
    pub images: Vec<Polynomial>,
    /// `Q ≅ J(d)` holds on Hilbert functions (the map is injective).
    pub injective: bool,
    /// The image ideal was already saturated.
    pub saturated: bool,
}

/// Embeds a rank-one module into the structure ring by its lowest-degree
/// homomorphism.
pub fn extract_ideal(q: &ModulePresentation, desc: &RingDescriptor) -> Result<ExtractedIdeal> {
    let ring = desc.ring.clone();
    let f = desc.modulus.as_ref();
    let rx = structure_module(desc, 0);
    let degs = q.generators().degrees();
    let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
        return Err(Error::Construction("the module has no generators".into()));
    };
    let fideal = GradedIdeal::from_homogeneous(&ring, f.into_iter().cloned().collect());
    for d in -hi..=(-lo + 30) {
        let Some(h) = hom_degree(q, &rx, d).into_iter().next() else {
            continue;
        };
        let images: Vec<Polynomial> = h.columns().iter().map(|c| fideal.normal_form(&c[0])).collect();
        let mut gens: Vec<Polynomial> = images.iter().filter(|p| !p.is_zero()).cloned().collect();
        if gens.is_empty() {
            continue;
        }
        gens.extend(f.cloned());
        let raw = GradedIdeal::new(&ring, gens)?;
        if raw.is_unit() {
            return Err(Error::Construction("the module embeds onto the whole ring".into()));
        }
        let image = presentation_of_ideal(&raw, f, true)?.twist(d);
        let injective = (WINDOW.0..=WINDOW.1).all(|n| image.hilbert_function(n) == q.hilbert_function(n));
        let sat = crate::groebner::saturate(&raw, None)?;
        return Ok(ExtractedIdeal {
            saturated: sat == raw,
            ideal: sat,
            twist: d,
            images,
            injective,
        });
    }
    Err(Error::Construction("no homomorphism to the structure ring found".into()))
}

/// Outcome of transforming an N-type resolution along a link.
#[derive(Clone, Debug, Serialize)]
pub struct LinkTransform {
    pub ntype: NTypeResolution,
    pub certificate: LinkageCertificate,
    /// The ideal built by the cone construction equals the residual ideal
    /// `(I_Y : I_C)`.
    pub residual_matches: bool,
    /// `h` with `H^1(N') = ` the reversal of `H^1(N)` moved by `h`.
    pub reversed_shift: Option<i32>,
    /// The cokernel of `L^∨ ⊕ E^∨ → N'` has the Hilbert function of `(N^σ)^∨`.
    pub middle_extension: bool,
}

/// Homomorphisms `E → N` of degree 0 with `π_N ∘ ψ = π_E` modulo the
/// modulus.
fn lift_through_projection(
    e: &ModulePresentation,
    pe: &[Polynomial],
    n: &ModulePresentation,
    pn: &[Polynomial],
    f: Option<&Polynomial>,
) -> Result<GradedMap> {
    let ring = e.ring().clone();
    let fideal = GradedIdeal::from_homogeneous(&ring, f.into_iter().cloned().collect());
    let homs = hom_degree(e, n, 0);
    let compose = |h: &GradedMap| -> Column {
        h.columns()
            .iter()
            .map(|c| {
                let p = c.iter().zip(pn).fold(Polynomial::zero(&ring), |acc, (x, y)| &acc + &(x * y));
                fideal.normal_form(&p)
            })
            .collect()
    };
    let params: Vec<Column> = homs.iter().map(compose).collect();
    let target: Column = pe.iter().map(|p| fideal.normal_form(p)).collect();
    let t = solve_columns(ring.field(), &params, &target)
        .ok_or_else(|| Error::Construction("the inclusion I_Y ⊆ I_C does not lift to E → N".into()))?;
    let mut psi = GradedMap::zero(&ring, e.generators().clone(), n.generators().clone());
    for (h, &c) in homs.iter().zip(&t) {
        if c != 0 {
            psi = psi.add(&h.scale(&Polynomial::constant(&ring, c as i64), 0));
        }
    }
    Ok(psi)
}

fn dot(a: &[Polynomial], b: &[Polynomial], ring: &std::sync::Arc<crate::ring::PolyRing>) -> Polynomial {
    a.iter().zip(b).fold(Polynomial::zero(ring), |acc, (x, y)| &acc + &(x * y))
}

/// Transforms an N-type resolution of `C` into one of the curve linked to
/// `C` by the AG scheme `Y`, by the cone over `I_Y ⊆ I_C`:
/// `0 → F^∨ → N' → I_{C'}(a') → 0` with `0 → L^∨ ⊕ E^∨ → N' → (N^σ)^∨ → 0`,
/// where `E` is the rank-2 module of `Y`.
pub fn link_transform_ntype(nt: &NTypeResolution, y: &SubschemeRecord) -> Result<LinkTransform> {
    let c = &nt.curve;
    let desc = c.ambient().clone();
    let f = desc.modulus.clone();
    let fr = f.as_ref();
    let ring = c.ring().clone();
    let (residual, certificate) = link(c, y)?;
    if !certificate.valid {
        return Err(Error::Construction(format!("link is not valid: {:?}", certificate.failures)));
    }
    let serre = serre_sheaf_from_ag(y)?;
    // E(a) so that E → I_Y(a) ⊆ I_C(a) lifts to a degree-0 map into N
    let e = serre.module.twist(nt.a);
    let n = &nt.module;
    let psi = lift_through_projection(&e, &serre.projection, n, &nt.projection, fr)?;

    // functionals on N, and their restrictions to L ⊕ E
    let kn = dual_generators(n, fr);
    let ke = dual_generators(&e, fr);
    let g0d = kn.target().clone();
    let e0d = ke.target().clone();
    let f_rel = |m: &FreeGradedModule| match fr {
        Some(f) => modulus_columns(m, f),
        None => GradedMap::zero(&ring, FreeGradedModule::zero(), m.clone()),
    };
    let n_dual = subquotient(&kn, &f_rel(&g0d));
    let e_dual = subquotient(&ke, &f_rel(&e0d));
    if n_dual.generators().rank() != kn.ncols() || e_dual.generators().rank() != ke.ncols() {
        return Err(Error::Construction("dual presentation is not minimal on its generators".into()));
    }
    let l_dual = free_over(&desc, nt.l.dual().degrees().to_vec());
    let le_dual = l_dual.direct_sum(&e_dual);
    let ke_f = ke.hconcat(&f_rel(&e0d));
    let mut g_cols: Vec<Column> = Vec::with_capacity(kn.ncols());
    for kappa in kn.columns() {
        let on_l: Vec<Polynomial> = nt.l_map.columns().iter().map(|col| dot(kappa, col, &ring)).collect();
        let on_e: Column = psi.columns().iter().map(|col| dot(kappa, col, &ring)).collect();
        let coeffs = lift(&ring, e0d.degrees(), ke_f.columns(), ke_f.source().degrees(), &[on_e])
            .remove(0)
            .ok_or_else(|| Error::Construction("restricted functional is not in E^∨".into()))?;
        let mut col = on_l;
        col.extend(coeffs[..ke.ncols()].iter().cloned());
        g_cols.push(col);
    }
    let g = GradedMap::from_columns(&ring, kn.source().clone(), le_dual.generators().clone(), g_cols);
    let k = GradedMap::from_columns(&ring, kn.source().clone(), g0d.clone(), kn.columns().to_vec());
    let f_dual = free_over(&desc, g0d.degrees().to_vec());
    let n_prime = fibered_sum(&n_dual, &f_dual, &le_dual, &k, &g)?.with_modulus_label(f.clone());

    // Q = N' / F^∨ = (L ⊕ E)^∨ / N^∨, a twisted ideal of the residual
    let q = ModulePresentation::new(le_dual.map().hconcat(&g)).with_modulus_label(f.clone());
    let ext = extract_ideal(&q, &desc)?;
    let curve = SubschemeRecord::new(&desc, ext.ideal.clone())?;
    let residual_matches = curve.ideal() == residual.ideal();
    let nf = g0d.rank();
    let old_projection: Vec<Polynomial> = std::iter::repeat(Polynomial::zero(&ring))
        .take(nf)
        .chain(ext.images.iter().cloned())
        .collect();
    // N' lists the generators of F^∨ first
    let ntype = assemble(curve, n_prime.clone(), g0d.clone(), old_projection, ext.twist)?;
    let reversed_shift = match (&nt.h1, &ntype.h1) {
        (Some(a), Some(b)) => table_shift(&reverse_table(a, 0), b),
        _ => None,
    };
    let middle = ModulePresentation::new(n_prime.map().hconcat(&{
        // kill the image of (L ⊕ E)^∨
        let r = n_prime.generators().rank();
        let cols: Vec<Column> = (nf..r)
            .map(|j| (0..r).map(|i| if i == j { Polynomial::one(&ring) } else { Polynomial::zero(&ring) }).collect())
            .collect();
        let deg = n_prime.generators().degrees()[nf..].to_vec();
        GradedMap::from_columns(&ring, FreeGradedModule::from_degrees(deg), n_prime.generators().clone(), cols)
    }));
    let sd = syzygy_dual(n);
    let middle_extension = (WINDOW.0..=WINDOW.1).all(|t| middle.hilbert_function(t) == sd.hilbert_function(t));
    Ok(LinkTransform {
        ntype,
        certificate,
        residual_matches,
        reversed_shift,
        middle_extension,
    })
}

/// A curve whose Rao module is a translate of `m`, built from the dual of
/// the second syzygy module of `M*` and a general map from a free module of
/// rank one less.
#[derive(Clone, Debug)]
pub struct CurveFromRao {
    pub curve: SubschemeRecord,
    pub rao: RaoModuleRecord,
    pub shift: i32,
    pub attempts: usize,
}

pub fn curve_from_rao_module(
    m: &RaoModuleRecord,
    desc: &RingDescriptor,
    seed: u64,
    retries: usize,
    pad: i32,
) -> Result<CurveFromRao> {
    let ring = desc.ring.clone();
    let f = desc.modulus.as_ref();
    let p = ring.field().characteristic();
    if m.is_zero() {
        // a complete intersection of two linear sections
        for attempt in 0..retries.max(1) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
            let irr = GradedIdeal::irrelevant(&ring);
            let mut gens: Vec<Polynomial> = (0..2).filter_map(|_| random_element(&irr, 1, &mut rng)).collect();
            gens.extend(f.cloned());
            let c = SubschemeRecord::new(desc, GradedIdeal::new(&ring, gens)?)?;
            if c.codimension_in_x() == 2 && c.is_acm() {
                let rao = rao_module(&c)?;
                return Ok(CurveFromRao { curve: c, rao, shift: 0, attempts: attempt + 1 });
            }
        }
        return Err(Error::Genericity("no complete intersection curve found".into()));
    }
    let mstar = graded_dual(&m.module)?.with_modulus_label(f.cloned());
    let maps = resolution_over(&mstar, f, 4);
    if maps.len() < 3 || maps[2].ncols() == 0 {
        return Err(Error::Construction("the dual module has too short a resolution".into()));
    }
    let d3 = maps[2].clone();
    let d4 = match maps.get(3) {
        Some(d) => d.clone(),
        None => GradedMap::zero(&ring, FreeGradedModule::zero(), d3.source().clone()),
    };
    let g = with_modulus(d4, f);
    let n_prime = dual_over(&g, f);
    let r = rank_over(&n_prime, f);
    if r < 2 {
        return Err(Error::Construction(format!("the syzygy bundle has rank {r}")));
    }
    let top = *n_prime.generators().degrees().iter().max().expect("generators") + pad;
    let basis = n_prime.basis_in_degree(top);
    for attempt in 0..retries.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let cols: Vec<Column> = (0..r - 1)
            .map(|_| {
                let mut v = vec![Polynomial::zero(&ring); n_prime.generators().rank()];
                for b in &basis {
                    let c: u32 = rng.gen_range(0..p);
                    for (x, y) in v.iter_mut().zip(b) {
                        if !y.is_zero() {
                            *x = &*x + &y.scale(c);
                        }
                    }
                }
                v
            })
            .collect();
        let phi = GradedMap::from_columns(
            &ring,
            FreeGradedModule::from_degrees(vec![top; r - 1]),
            n_prime.generators().clone(),
            cols,
        );
        let q = ModulePresentation::new(n_prime.map().hconcat(&phi)).with_modulus_label(f.cloned());
        let Ok(ext) = extract_ideal(&q, desc) else { continue };
        if !ext.injective {
            continue;
        }
        let c = SubschemeRecord::new(desc, ext.ideal)?;
        if c.dimension() != 1 || c.codimension_in_x() != 2 {
            continue;
        }
        let Ok(rao) = rao_module(&c) else { continue };
        if let Some(shift) = rao_shift_equivalent(m, &rao) {
            return Ok(CurveFromRao { curve: c, rao, shift, attempts: attempt + 1 });
        }
    }
    Err(Error::Genericity(format!(
        "no curve with the prescribed Rao module within {retries} attempts"
    )))
}
