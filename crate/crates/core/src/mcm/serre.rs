//! The Serre correspondence between rank-2 ACM modules and arithmetically
//! Gorenstein codimension-2 subschemes, and rank-1 ACM modules as surfaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{acm_module_check, MCMModuleRecord, HF_WINDOW};
use crate::error::{usage, Error, Result};
use crate::groebner::{column_degree, minimal_generators, Column, GradedIdeal};
use crate::homology::{
    hf_exact, hom_degree, ideal_module_generators, modulus_columns, presentation_of_ideal, relations_over, resolution_over,
    syzygies_over, FreeGradedModule, GradedMap, ModulePresentation,
};
use crate::liaison::SubschemeRecord;
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

/// `N` with `0 → R_X(-a) → N → I_{Y,X} → 0`.
#[derive(Clone, Debug)]
pub struct SerreSheaf {
    pub module: ModulePresentation,
    /// Image in `I_Y` of each generator of the module.
    pub projection: Vec<Polynomial>,
    /// The generator of `R_X(-a)` as an element of the module.
    pub section: Column,
    pub a: i32,
    /// The ACM record, when the ambient is a hypersurface.
    pub record: Option<MCMModuleRecord>,
    pub hf_exact: bool,
}

/// The structure module of the ambient (`P` or `P/(f)`), generated in
/// degree `d`.
pub fn structure_module(desc: &RingDescriptor, d: i32) -> ModulePresentation {
    let f0 = FreeGradedModule::from_degrees(vec![d]);
    match &desc.modulus {
        Some(f) => ModulePresentation::over_hypersurface(
            GradedMap::zero(&desc.ring, FreeGradedModule::zero(), f0),
            f,
        ),
        None => ModulePresentation::free(&desc.ring, f0),
    }
}

/// Minimal generators of `Ext^1(M, R_X)` as cocycles: columns on the dual
/// of the relation module of `M`, in increasing degree, together with their
/// degrees and the minimal relation map `d1` of `M`.
pub fn ext1_cocycles(m: &ModulePresentation, f: Option<&Polynomial>) -> (Vec<Column>, Vec<i32>, GradedMap) {
    let ring = m.ring().clone();
    let maps = resolution_over(m, f, 2);
    let d1 = maps[0].clone();
    let f1d = d1.source().dual();
    let ker = match maps.get(1) {
        Some(d2) if d2.ncols() > 0 => syzygies_over(&d2.transpose(), f),
        _ => GradedMap::identity(&ring, &f1d),
    };
    let mut rels = d1.transpose();
    if let Some(f) = f {
        rels = rels.hconcat(&modulus_columns(&f1d, f));
    }
    let all = rels.hconcat(&ker);
    let n = rels.ncols();
    let cols: Vec<Column> = minimal_generators(&ring, f1d.degrees(), all.columns())
        .into_iter()
        .filter(|&j| j >= n)
        .map(|j| all.columns()[j].clone())
        .collect();
    let degs = cols
        .iter()
        .map(|c| column_degree(f1d.degrees(), c).expect("homogeneous cocycle"))
        .collect();
    (cols, degs, d1)
}

/// The extension `coker [[λ], [d1]]` of `M` by `⊕ R_X(e_j)` for cocycle
/// rows `λ_j` of degree `e_j`; the new generators come first, in degrees
/// `-e_j`.
pub fn universal_extension_map(cocycles: &[Column], degrees: &[i32], d1: &GradedMap) -> GradedMap {
    let ring = d1.ring().clone();
    let mut map: Option<GradedMap> = None;
    for (lambda, e) in cocycles.iter().zip(degrees) {
        let row = GradedMap::from_columns(
            &ring,
            d1.source().clone(),
            FreeGradedModule::from_degrees(vec![-e]),
            lambda.iter().map(|p| vec![p.clone()]).collect(),
        );
        map = Some(match map {
            Some(m) => m.vconcat(&row),
            None => row,
        });
    }
    match map {
        Some(m) => m.vconcat(d1),
        None => d1.clone(),
    }
}

/// Builds the rank-2 module attached to an AG codimension-2 subscheme by
/// the extension class generating `Ext^1(I_{Y,X}, R_X)`.
pub fn serre_sheaf_from_ag(y: &SubschemeRecord) -> Result<SerreSheaf> {
    let f = y.modulus();
    if y.codimension_in_x() != 2 || !y.is_ag() {
        return usage("the subscheme must be arithmetically Gorenstein of codimension 2");
    }
    let ring = y.ring().clone();
    let i = presentation_of_ideal(y.ideal(), f, true)?;
    let ygens = ideal_module_generators(y.ideal(), f);
    if ygens.len() != i.generators().rank() {
        return Err(Error::Construction("ideal presentation changed its generators".into()));
    }
    let (cocycles, degrees, d1) = ext1_cocycles(&i, f);
    if cocycles.len() != 1 {
        return Err(Error::Construction(format!(
            "Ext^1(I_Y, R_X) needs {} generators; it must be cyclic",
            cocycles.len()
        )));
    }
    let a = -degrees[0];
    let map = universal_extension_map(&cocycles, &degrees, &d1);
    let full = match f {
        Some(f) => ModulePresentation::over_hypersurface(map, f),
        None => ModulePresentation::new(map),
    };
    let tracked = full.minimalize_tracked();
    let module = tracked.module;
    let old_projection: Vec<Polynomial> = std::iter::once(Polynomial::zero(&ring)).chain(ygens).collect();
    let projection = tracked.kept.iter().map(|&k| old_projection[k].clone()).collect();
    let section = tracked.to_new.columns()[0].clone();
    let (lo, hi) = HF_WINDOW;
    let sub = structure_module(y.ambient(), a);
    let exact = hf_exact(&sub.hilbert_series(), &module.hilbert_series(), &i.hilbert_series(), lo, hi);
    let record = match f {
        Some(_) => acm_module_check(&module)?.into_record(),
        None => None,
    };
    if f.is_some() && record.as_ref().map(|r| r.rank) != Some(2) {
        return Err(Error::Construction("the Serre module is not a rank-2 ACM module".into()));
    }
    Ok(SerreSheaf {
        module,
        projection,
        section,
        a,
        record,
        hf_exact: exact,
    })
}

/// Number of reseeded attempts for random sections.
pub const SECTION_ATTEMPTS: u64 = 16;

/// The zero scheme of a general section of `N(a)`: returns `Y` and `b` with
/// `0 → R_X → N(a) → I_{Y,X}(b) → 0`.
pub fn serre_subscheme_from_section(
    n: &MCMModuleRecord,
    a: i32,
    seed: u64,
) -> Result<(SubschemeRecord, i32)> {
    if n.rank != 2 {
        return usage(format!("a section defines a codimension-2 scheme only for rank 2, not {}", n.rank));
    }
    let f = n.mf.f.clone();
    let ring = f.ring().clone();
    let desc = RingDescriptor::new(ring.clone()).with_modulus(f.clone())?;
    let nm = n.module.minimalize();
    let basis = nm.basis_in_degree(a);
    if basis.is_empty() {
        return usage(format!("the module has no elements of degree {a}"));
    }
    let d1 = relations_over(&nm, Some(&f));
    let k = syzygies_over(&d1.transpose(), Some(&f));
    let p = ring.field().characteristic();
    let rx = structure_module(&desc, 0);
    for attempt in 0..SECTION_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut s = vec![Polynomial::zero(&ring); nm.generators().rank()];
        for b in &basis {
            let c: u32 = rng.gen_range(1..p);
            for (si, bi) in s.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *si = &*si + &bi.scale(c);
                }
            }
        }
        let mut gens: Vec<Polynomial> = k
            .columns()
            .iter()
            .map(|kc| {
                kc.iter()
                    .zip(&s)
                    .fold(Polynomial::zero(&ring), |acc, (x, y)| &acc + &(x * y))
            })
            .filter(|g| !g.is_zero())
            .collect();
        gens.push(f.clone());
        let ideal = GradedIdeal::new(&ring, gens)?;
        if ideal.is_unit() {
            continue;
        }
        let y = SubschemeRecord::new(&desc, ideal)?;
        if y.codimension_in_x() != 2 || !y.is_ag() {
            continue;
        }
        let iy = presentation_of_ideal(y.ideal(), Some(&f), true)?;
        let na = nm.twist(a).hilbert_series();
        let (lo, hi) = HF_WINDOW;
        let b = (-40..=40).find(|&b| hf_exact(&rx.hilbert_series(), &na, &iy.hilbert_series().twist(b), lo, hi));
        if let Some(b) = b {
            return Ok((y, b));
        }
    }
    Err(Error::Genericity(format!(
        "no section of N({a}) vanished in codimension 2 within {SECTION_ATTEMPTS} attempts"
    )))
}

/// Embeds a twist of a rank-1 ACM module into `R_X` and returns the
/// subscheme cut out by the image. Degrees of homomorphisms are tried in
/// increasing order over the window, basis maps in order.
pub fn rank1_acm_to_surface(l: &MCMModuleRecord, window: (i32, i32)) -> Result<SubschemeRecord> {
    if l.rank != 1 {
        return usage(format!("expected a rank-1 module, got rank {}", l.rank));
    }
    let f = l.mf.f.clone();
    let ring = f.ring().clone();
    let desc = RingDescriptor::new(ring.clone()).with_modulus(f.clone())?;
    let rx = structure_module(&desc, 0);
    let fideal = GradedIdeal::from_homogeneous(&ring, vec![f.clone()]);
    for d in window.0..=window.1 {
        for h in hom_degree(&l.module, &rx, d) {
            let mut gens: Vec<Polynomial> = h
                .columns()
                .iter()
                .map(|c| c[0].clone())
                .filter(|g| !fideal.contains(g))
                .collect();
            if gens.is_empty() {
                continue;
            }
            gens.push(f.clone());
            let ideal = GradedIdeal::new(&ring, gens)?;
            if ideal.is_unit() {
                continue;
            }
            let s = SubschemeRecord::new(&desc, ideal)?;
            if s.codimension_in_x() == 1 && s.is_acm() {
                return Ok(s);
            }
        }
    }
    Err(Error::Construction(format!(
        "no homomorphism of degree in [{}, {}] embeds the module as an ACM surface",
        window.0, window.1
    )))
}
