//! Syzygies, resolutions, duals and Ext over a hypersurface ring `P/(f)`,
//! computed over `P` with `f` adjoined. With no modulus they reduce to the
//! ambient versions.

use super::free::{FreeGradedModule, GradedMap};
use super::presentation::{kernel_generators, sort_columns_by_degree, subquotient, ModulePresentation};
use crate::groebner::{column_degree, is_zero_column, minimal_generators, syzygies, Column};
use crate::poly::Polynomial;

/// `f · id` on a free module (source twisted by `deg f`).
pub fn modulus_columns(m: &FreeGradedModule, f: &Polynomial) -> GradedMap {
    let ring = f.ring().clone();
    GradedMap::scalar(&ring, m, f, f.degree().unwrap_or(0) as i32)
}

/// Minimal generators of the columns modulo `f·F`, as a map into `F`.
pub fn minimal_columns_mod(m: &GradedMap, f: Option<&Polynomial>) -> GradedMap {
    let ring = m.ring().clone();
    let Some(f) = f else {
        let keep = minimal_generators(&ring, m.target().degrees(), m.columns());
        let mut out = m.select_columns(&keep);
        sort_columns_by_degree(&mut out);
        return out;
    };
    let fi = modulus_columns(m.target(), f);
    let all = fi.hconcat(m);
    let n = fi.ncols();
    let keep = minimal_generators(&ring, all.target().degrees(), all.columns());
    let idx: Vec<usize> = keep.into_iter().filter(|&j| j >= n).map(|j| j - n).collect();
    let mut out = m.select_columns(&idx);
    sort_columns_by_degree(&mut out);
    out
}

/// Minimal syzygies of the columns of `m` over `P/(f)`.
pub fn syzygies_over(m: &GradedMap, f: Option<&Polynomial>) -> GradedMap {
    let ring = m.ring().clone();
    let Some(f) = f else {
        return kernel_generators(m);
    };
    let n = m.ncols();
    let all = m.hconcat(&modulus_columns(m.target(), f));
    let syz = syzygies(&ring, all.target().degrees(), all.columns(), all.source().degrees());
    let proj: Vec<Column> = syz
        .into_iter()
        .map(|c| c[..n].to_vec())
        .filter(|c| !is_zero_column(c))
        .collect();
    let deg: Vec<i32> = proj
        .iter()
        .map(|c| column_degree(m.source().degrees(), c).expect("homogeneous syzygy"))
        .collect();
    let k = GradedMap::from_columns(&ring, FreeGradedModule::from_degrees(deg), m.source().clone(), proj);
    minimal_columns_mod(&k, Some(f))
}

/// The relations of `M` needed over `P/(f)` (the multiples of `f` dropped),
/// after pruning constant entries.
pub fn relations_over(m: &ModulePresentation, f: Option<&Polynomial>) -> GradedMap {
    let p = m.minimalize();
    minimal_columns_mod(p.map(), f)
}

/// The first `len` maps of a minimal resolution over `P/(f)`.
pub fn resolution_over(m: &ModulePresentation, f: Option<&Polynomial>, len: usize) -> Vec<GradedMap> {
    let mut maps = vec![relations_over(m, f)];
    while maps.len() < len {
        let last = maps.last().expect("nonempty");
        if last.ncols() == 0 {
            break;
        }
        let next = syzygies_over(last, f);
        maps.push(next);
    }
    maps
}

fn finish(p: ModulePresentation, f: Option<&Polynomial>) -> ModulePresentation {
    p.with_modulus_label(f.cloned())
}

/// Minimal generators of `Hom(M, P/(f))` as functionals on the generators
/// of the minimalized presentation of `M` (columns on the dual free module).
pub fn dual_generators(m: &ModulePresentation, f: Option<&Polynomial>) -> GradedMap {
    let d1 = relations_over(m, f);
    let f0d = m.minimalize().generators().dual();
    let ring = m.ring().clone();
    let kt = if d1.ncols() == 0 {
        let id = GradedMap::identity(&ring, &f0d);
        minimal_columns_mod(&id, f)
    } else {
        syzygies_over(&d1.transpose(), f)
    };
    if kt.target() == &f0d {
        kt
    } else {
        GradedMap::from_columns(&ring, kt.source().clone(), f0d, kt.into_columns())
    }
}

/// `Hom(M, P/(f))`, presented on [`dual_generators`].
pub fn dual_over(m: &ModulePresentation, f: Option<&Polynomial>) -> ModulePresentation {
    let kt = dual_generators(m, f);
    let ring = m.ring().clone();
    let f0d = kt.target().clone();
    let rels = match f {
        Some(f) => modulus_columns(&f0d, f),
        None => GradedMap::zero(&ring, FreeGradedModule::zero(), f0d),
    };
    finish(subquotient(&kt, &rels), f)
}

/// `Ext^i(M, P/(f))` from a truncated resolution over `P/(f)`.
pub fn ext_over(m: &ModulePresentation, f: Option<&Polynomial>, i: usize) -> ModulePresentation {
    if i == 0 {
        return dual_over(m, f);
    }
    let ring = m.ring().clone();
    let maps = resolution_over(m, f, i + 1);
    if maps.len() < i || maps[i - 1].ncols() == 0 {
        return ModulePresentation::zero(&ring);
    }
    let di = &maps[i - 1];
    let fi_dual = di.source().dual();
    let image = di.transpose();
    let ker = if maps.len() > i {
        syzygies_over(&maps[i].transpose(), f)
    } else {
        GradedMap::identity(&ring, &fi_dual)
    };
    let rels = match f {
        Some(f) => image.hconcat(&modulus_columns(&fi_dual, f)),
        None => image,
    };
    finish(subquotient(&ker, &rels), f)
}

/// Rank over `P/(f)` (or `P`): the multiplicity ratio when the module has
/// full dimension, zero otherwise.
pub fn rank_over(m: &ModulePresentation, f: Option<&Polynomial>) -> usize {
    let hs = m.hilbert_series();
    let v = m.ring().nvars();
    let full = if f.is_some() { v - 1 } else { v };
    if hs.is_zero() || hs.dimension() < full {
        return 0;
    }
    let e = hs.degree();
    let base = f.map_or(1, |f| f.degree().unwrap_or(1) as i64);
    (e / base) as usize
}
