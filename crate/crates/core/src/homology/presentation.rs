//! Finitely presented graded modules, the cokernels of [`GradedMap`]s.

use std::sync::{Arc, OnceLock};

use super::free::{FreeGradedModule, GradedMap};
use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::groebner::{
    column_degree, is_zero_column, minimal_generators, syzygies, Column, GradedIdeal, ModuleGb,
};
use crate::hilbert::HilbertSeries;
use crate::linalg::{columns_to_coordinates, densify, nullspace, MonomialIndex};
use crate::monomial::monomials_of_degree;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// `coker(map)` as a module over the ambient polynomial ring. When `modulus`
/// is set the module is annihilated by it (the multiples `f·e_i` are among
/// the relations) and is regarded as a module over the hypersurface ring.
#[derive(Clone)]
pub struct ModulePresentation {
    map: GradedMap,
    modulus: Option<Polynomial>,
    name: Option<String>,
    basis: OnceLock<ModuleGb>,
}

impl std::fmt::Debug for ModulePresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n}: ")?;
        }
        write!(f, "coker {:?}", self.map)
    }
}

impl ModulePresentation {
    pub fn new(map: GradedMap) -> Self {
        ModulePresentation {
            map,
            modulus: None,
            name: None,
            basis: OnceLock::new(),
        }
    }

    /// `coker(map)` over `P/(f)`: the relations `f·e_i` are adjoined.
    pub fn over_hypersurface(map: GradedMap, f: &Polynomial) -> Self {
        let ring = map.ring().clone();
        let d = f.degree().expect("nonzero modulus") as i32;
        let fi = GradedMap::scalar(&ring, map.target(), f, d);
        let mut out = Self::new(map.hconcat(&fi));
        out.modulus = Some(f.clone());
        out
    }

    pub fn free(ring: &Arc<PolyRing>, f: FreeGradedModule) -> Self {
        Self::new(GradedMap::zero(ring, FreeGradedModule::zero(), f))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::free(ring, FreeGradedModule::zero())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Marks the module as living over `P/(f)` without changing relations.
    pub fn with_modulus_label(mut self, f: Option<Polynomial>) -> Self {
        self.modulus = f;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        self.modulus.as_ref()
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.map.ring()
    }

    pub fn generators(&self) -> &FreeGradedModule {
        self.map.target()
    }

    pub fn relations(&self) -> &FreeGradedModule {
        self.map.source()
    }

    pub fn gb(&self) -> &ModuleGb {
        self.basis.get_or_init(|| {
            ModuleGb::new(self.ring(), self.generators().degrees(), self.map.columns())
        })
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_module_quotient(self.ring().nvars(), self.generators().degrees(), self.gb())
    }

    pub fn hilbert_function(&self, n: i32) -> i64 {
        self.hilbert_series().hilbert_function(n)
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_whole()
    }

    /// Whether a column of the generator module maps to zero in the module.
    pub fn is_zero_element(&self, v: &[Polynomial]) -> bool {
        self.gb().contains(v)
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Column {
        self.gb().normal_form(v)
    }

    /// `M(a)`.
    pub fn twist(&self, a: i32) -> Self {
        let mut out = Self::new(self.map.twist(a));
        out.modulus = self.modulus.clone();
        out.name = self.name.clone();
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::new(self.map.direct_sum(&other.map));
        out.modulus = self.modulus.clone().or_else(|| other.modulus.clone());
        out
    }

    /// Whether the presentation has no constant entries and minimal relations.
    pub fn is_minimal(&self) -> bool {
        if !self.map.unit_entries().is_empty() {
            return false;
        }
        let keep = minimal_generators(self.ring(), self.generators().degrees(), self.map.columns());
        keep.len() == self.map.ncols()
    }

    /// Removes constant entries by row and column elimination and keeps a
    /// minimal subset of relations. The module is unchanged up to isomorphism.
    pub fn minimalize(&self) -> Self {
        let pruned = prune_units(&self.map);
        let pruned = pruned.drop_zero_columns();
        let keep = minimal_generators(pruned.ring(), pruned.target().degrees(), pruned.columns());
        let map = pruned.select_columns(&keep);
        let mut out = Self::new(map);
        out.modulus = self.modulus.clone();
        out.name = self.name.clone();
        out
    }

    /// A `k`-basis of the degree-`e` piece, as normal-form columns.
    pub fn basis_in_degree(&self, e: i32) -> Vec<Column> {
        let ring = self.ring();
        let lead = self.gb().leading_terms();
        let n = ring.nvars();
        let mut out = Vec::new();
        for (i, &d) in self.generators().degrees().iter().enumerate() {
            if e < d {
                continue;
            }
            for m in monomials_of_degree(n, (e - d) as u32) {
                if lead.iter().any(|(l, c)| *c == i && l.divides(&m)) {
                    continue;
                }
                let mut col = vec![Polynomial::zero(ring); self.generators().rank()];
                col[i] = Polynomial::monomial(ring, 1, m);
                out.push(col);
            }
        }
        out
    }
}

/// Eliminates nonzero constant entries of a graded map, deleting the
/// corresponding row and column each time.
pub fn prune_units(m: &GradedMap) -> GradedMap {
    let ring = m.ring().clone();
    let k = ring.field();
    let mut cols: Vec<Column> = m.columns().to_vec();
    let mut sdeg: Vec<i32> = m.source().degrees().to_vec();
    let mut tdeg: Vec<i32> = m.target().degrees().to_vec();
    loop {
        let found = cols.iter().enumerate().find_map(|(j, c)| {
            c.iter()
                .position(|p| p.as_nonzero_constant().is_some())
                .map(|i| (i, j))
        });
        let Some((i, j)) = found else { break };
        eliminate_unit(k, &mut cols, i, j);
        sdeg.remove(j);
        tdeg.remove(i);
    }
    GradedMap::from_columns(
        &ring,
        FreeGradedModule::from_degrees(sdeg),
        FreeGradedModule::from_degrees(tdeg),
        cols,
    )
}

fn eliminate_unit(k: PrimeField, cols: &mut Vec<Column>, i: usize, j: usize) {
    let c = cols[j][i].as_nonzero_constant().expect("unit entry");
    let cinv = k.inv(c).expect("nonzero");
    let pivot = cols.remove(j);
    for col in cols.iter_mut() {
        let a = &col[i];
        if a.is_zero() {
            continue;
        }
        let factor = a.scale(cinv);
        for (x, y) in col.iter_mut().zip(&pivot) {
            if !y.is_zero() {
                *x = &*x - &(&factor * y);
            }
        }
    }
    for col in cols.iter_mut() {
        col.remove(i);
    }
}

/// [`prune_units`] together with the change of generators: column `i` of
/// the returned `to_new` map expresses old generator `i` in the surviving
/// generators, and `kept[k]` is the old index of new generator `k`.
pub fn prune_units_tracked(m: &GradedMap) -> (GradedMap, GradedMap, Vec<usize>) {
    let ring = m.ring().clone();
    let k = ring.field();
    let n = m.nrows();
    let mut cols: Vec<Column> = m.columns().to_vec();
    let mut sdeg: Vec<i32> = m.source().degrees().to_vec();
    let mut tdeg: Vec<i32> = m.target().degrees().to_vec();
    let mut kept: Vec<usize> = (0..n).collect();
    let mut track: Vec<Column> = (0..n)
        .map(|i| (0..n).map(|r| if r == i { Polynomial::one(&ring) } else { Polynomial::zero(&ring) }).collect())
        .collect();
    loop {
        let found = cols.iter().enumerate().find_map(|(j, c)| {
            c.iter()
                .position(|p| p.as_nonzero_constant().is_some())
                .map(|i| (i, j))
        });
        let Some((i, j)) = found else { break };
        let ntrack = track.len();
        let mut all = std::mem::take(&mut track);
        all.extend(std::mem::take(&mut cols));
        eliminate_unit(k, &mut all, i, ntrack + j);
        cols = all.split_off(ntrack);
        track = all;
        sdeg.remove(j);
        tdeg.remove(i);
        kept.remove(i);
    }
    let pruned = GradedMap::from_columns(
        &ring,
        FreeGradedModule::from_degrees(sdeg),
        FreeGradedModule::from_degrees(tdeg.clone()),
        cols,
    );
    let to_new = GradedMap::from_columns(&ring, m.target().clone(), FreeGradedModule::from_degrees(tdeg), track);
    (pruned, to_new, kept)
}

/// A minimal presentation with the generator bookkeeping of
/// [`prune_units_tracked`].
#[derive(Clone, Debug)]
pub struct TrackedPresentation {
    pub module: ModulePresentation,
    /// Old generators expressed in the new ones.
    pub to_new: GradedMap,
    /// Old index of each new generator.
    pub kept: Vec<usize>,
}

impl ModulePresentation {
    /// [`ModulePresentation::minimalize`] keeping track of generators.
    pub fn minimalize_tracked(&self) -> TrackedPresentation {
        let (pruned, to_new, kept) = prune_units_tracked(&self.map);
        let pruned = pruned.drop_zero_columns();
        let keep = minimal_generators(pruned.ring(), pruned.target().degrees(), pruned.columns());
        let mut module = Self::new(pruned.select_columns(&keep));
        module.modulus = self.modulus.clone();
        module.name = self.name.clone();
        TrackedPresentation { module, to_new, kept }
    }
}

/// Ungraded unit pruning of a matrix given by rows: the presented module is
/// unchanged, constant entries are removed one at a time.
pub fn prune_unit_entries(rows: Vec<Vec<Polynomial>>) -> Vec<Vec<Polynomial>> {
    let Some(first) = rows.first().and_then(|r| r.first()) else {
        return rows;
    };
    let k = first.ring().field();
    let ncols = rows[0].len();
    let mut cols: Vec<Column> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let mut nrows = rows.len();
    loop {
        let found = cols.iter().enumerate().find_map(|(j, c)| {
            c.iter()
                .position(|p| p.as_nonzero_constant().is_some())
                .map(|i| (i, j))
        });
        let Some((i, j)) = found else { break };
        eliminate_unit(k, &mut cols, i, j);
        nrows -= 1;
    }
    (0..nrows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Minimal generators of `I` (of `I/(f)` when a modulus is given), in the
/// order used by [`presentation_of_ideal`] for the ideal module.
pub fn ideal_module_generators(i: &GradedIdeal, modulus: Option<&Polynomial>) -> Vec<Polynomial> {
    let ring = i.ring().clone();
    let mut gens: Vec<Polynomial> = i.minimal_generators();
    if let Some(f) = modulus {
        let fid = GradedIdeal::from_homogeneous(&ring, vec![f.clone()]);
        let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
        let mut with_f = vec![vec![f.clone()]];
        with_f.extend(cols);
        let keep = minimal_generators(&ring, &[0], &with_f);
        gens = keep
            .into_iter()
            .filter(|&j| j > 0)
            .map(|j| with_f[j][0].clone())
            .filter(|g| !fid.contains(g))
            .collect();
    }
    gens
}

/// `R/I` (or the ideal module `I` when `ideal_module` is set) over the
/// ambient ring, or over `P/(f)` when `modulus` is given (then `f ∈ I` is
/// required and `f` is removed from the generators of the ideal module).
pub fn presentation_of_ideal(
    i: &GradedIdeal,
    modulus: Option<&Polynomial>,
    ideal_module: bool,
) -> Result<ModulePresentation> {
    let ring = i.ring().clone();
    if let Some(f) = modulus {
        if !i.contains(f) {
            return usage("the ideal does not contain the modulus");
        }
    }
    if !ideal_module {
        let gens = i.minimal_generators();
        let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
        let sdeg: Vec<i32> = gens.iter().map(|g| g.degree().unwrap_or(0) as i32).collect();
        let map = GradedMap::from_columns(
            &ring,
            FreeGradedModule::from_degrees(sdeg),
            FreeGradedModule::from_degrees(vec![0]),
            cols,
        );
        let mut p = ModulePresentation::new(map);
        p.modulus = modulus.cloned();
        return Ok(p);
    }
    let gens = ideal_module_generators(i, modulus);
    let tdeg: Vec<i32> = gens.iter().map(|g| g.degree().unwrap_or(0) as i32).collect();
    let mut cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
    let mut sdeg = tdeg.clone();
    if let Some(f) = modulus {
        cols.push(vec![f.clone()]);
        sdeg.push(f.degree().unwrap_or(0) as i32);
    }
    let syz = syzygies(&ring, &[0], &cols, &sdeg);
    let n = gens.len();
    let rel: Vec<Column> = syz
        .into_iter()
        .map(|c| c[..n].to_vec())
        .filter(|c| !is_zero_column(c))
        .collect();
    let rdeg: Vec<i32> = rel
        .iter()
        .map(|c| column_degree(&tdeg, c).expect("homogeneous syzygy"))
        .collect();
    let map = GradedMap::from_columns(
        &ring,
        FreeGradedModule::from_degrees(rdeg),
        FreeGradedModule::from_degrees(tdeg),
        rel,
    );
    let mut p = ModulePresentation::new(map).minimalize();
    p.modulus = modulus.cloned();
    Ok(p)
}

/// The submodule of `im(gens) + im(rels)` modulo `im(rels)`, presented on
/// the columns of `gens`.
pub fn subquotient(gens: &GradedMap, rels: &GradedMap) -> ModulePresentation {
    let ring = gens.ring().clone();
    let n = gens.ncols();
    let all = gens.hconcat(rels);
    let syz = syzygies(&ring, gens.target().degrees(), all.columns(), all.source().degrees());
    let proj: Vec<Column> = syz
        .into_iter()
        .map(|c| c[..n].to_vec())
        .filter(|c| !is_zero_column(c))
        .collect();
    let deg: Vec<i32> = proj
        .iter()
        .map(|c| column_degree(gens.source().degrees(), c).expect("homogeneous relation"))
        .collect();
    let map = GradedMap::from_columns(&ring, FreeGradedModule::from_degrees(deg), gens.source().clone(), proj);
    ModulePresentation::new(map).minimalize()
}

/// Minimal generators of the kernel of a map of free modules, as the
/// inclusion map into the source.
pub fn kernel_generators(m: &GradedMap) -> GradedMap {
    let ring = m.ring().clone();
    let syz = syzygies(&ring, m.target().degrees(), m.columns(), m.source().degrees());
    let syz: Vec<Column> = syz.into_iter().filter(|c| !is_zero_column(c)).collect();
    let keep = minimal_generators(&ring, m.source().degrees(), &syz);
    let cols: Vec<Column> = keep.iter().map(|&j| syz[j].clone()).collect();
    let deg: Vec<i32> = cols
        .iter()
        .map(|c| column_degree(m.source().degrees(), c).expect("homogeneous syzygy"))
        .collect();
    let mut out = GradedMap::from_columns(&ring, FreeGradedModule::from_degrees(deg), m.source().clone(), cols);
    sort_columns_by_degree(&mut out);
    out
}

/// Reorders the columns so source degrees increase.
pub fn sort_columns_by_degree(m: &mut GradedMap) {
    let mut idx: Vec<usize> = (0..m.ncols()).collect();
    idx.sort_by_key(|&j| (m.source().degrees()[j], j));
    *m = m.select_columns(&idx);
}

/// Kernel of a map of free modules, as a presented module.
pub fn kernel_of_free_map(m: &GradedMap) -> ModulePresentation {
    let k = kernel_generators(m);
    let rels = GradedMap::zero(m.ring(), FreeGradedModule::zero(), m.source().clone());
    subquotient(&k, &rels)
}

/// Kernel of the map `M → N` induced by `phi` on generators.
pub fn kernel_of_map(src: &ModulePresentation, tgt: &ModulePresentation, phi: &GradedMap) -> ModulePresentation {
    let n = phi.ncols();
    let ring = phi.ring().clone();
    let all = phi.hconcat(tgt.map());
    let syz = syzygies(&ring, tgt.generators().degrees(), all.columns(), all.source().degrees());
    let proj: Vec<Column> = syz
        .into_iter()
        .map(|c| c[..n].to_vec())
        .filter(|c| !is_zero_column(c))
        .collect();
    let keep = minimal_generators(&ring, src.generators().degrees(), &proj);
    let cols: Vec<Column> = keep.iter().map(|&j| proj[j].clone()).collect();
    let deg: Vec<i32> = cols
        .iter()
        .map(|c| column_degree(src.generators().degrees(), c).expect("homogeneous"))
        .collect();
    let gens = GradedMap::from_columns(&ring, FreeGradedModule::from_degrees(deg), src.generators().clone(), cols);
    subquotient(&gens, src.map())
}

/// Cokernel of the map `M → N` induced by `phi`.
pub fn cokernel_of_map(tgt: &ModulePresentation, phi: &GradedMap) -> ModulePresentation {
    let mut out = ModulePresentation::new(tgt.map().hconcat(phi)).minimalize();
    out.modulus = tgt.modulus.clone();
    out
}

/// Checks that `phi` is a well-defined homomorphism `M → N`: every relation
/// of `M` maps into the relations of `N`.
pub fn is_homomorphism(src: &ModulePresentation, tgt: &ModulePresentation, phi: &GradedMap) -> bool {
    phi.ncols() == src.generators().rank()
        && phi.nrows() == tgt.generators().rank()
        && src.map().columns().iter().all(|c| tgt.is_zero_element(&phi.apply(c)))
}

/// Pushout of `f: A → B` and `g: A → C`: `(B ⊕ C) / {(f a, -g a)}`.
pub fn fibered_sum(
    a: &ModulePresentation,
    b: &ModulePresentation,
    c: &ModulePresentation,
    f: &GradedMap,
    g: &GradedMap,
) -> Result<ModulePresentation> {
    if !is_homomorphism(a, b, f) || !is_homomorphism(a, c, g) {
        return usage("fibered sum needs homomorphisms out of the common source");
    }
    let anti = f.vconcat(&g.neg());
    let rel = b.map().direct_sum(c.map()).hconcat(&anti);
    let out = ModulePresentation::new(rel);
    // the square commutes on generators of A
    debug_assert!(anti.columns().iter().all(|v| out.is_zero_element(v)));
    Ok(out)
}

/// Hilbert-function additivity of `0 → A → B → C → 0` on a degree window.
pub fn hf_exact(a: &HilbertSeries, b: &HilbertSeries, c: &HilbertSeries, lo: i32, hi: i32) -> bool {
    (lo..=hi).all(|n| b.hilbert_function(n) == a.hilbert_function(n) + c.hilbert_function(n))
}

/// A basis of `Hom(M, N)_d`: matrices from the generators of `M` (shifted
/// by `d`) to the generators of `N`, in normal form modulo the relations
/// of `N`.
pub fn hom_degree(src: &ModulePresentation, tgt: &ModulePresentation, d: i32) -> Vec<GradedMap> {
    let ring = src.ring().clone();
    let k = ring.field();
    let gsrc = src.generators().degrees();
    let ntgt = tgt.generators().rank();
    // parameters: (source generator, basis element of N in its degree)
    let mut params: Vec<(usize, Column)> = Vec::new();
    for (j, &a) in gsrc.iter().enumerate() {
        for b in tgt.basis_in_degree(a + d) {
            params.push((j, b));
        }
    }
    let source = FreeGradedModule::from_degrees(gsrc.iter().map(|a| a + d).collect());
    if params.is_empty() {
        return Vec::new();
    }
    // conditions: each relation of M maps to zero in N
    let mut index = MonomialIndex::new();
    let mut columns: Vec<Vec<(usize, u32)>> = Vec::with_capacity(params.len());
    for (j, b) in &params {
        let mut coords: Vec<(usize, u32)> = Vec::new();
        for (l, rel) in src.map().columns().iter().enumerate() {
            let a = &rel[*j];
            if a.is_zero() {
                continue;
            }
            let img: Column = b.iter().map(|p| p * a).collect();
            let nf = tgt.normal_form(&img);
            // component index offset by relation number
            let shifted: Column = {
                let mut v = vec![Polynomial::zero(&ring); ntgt * src.map().ncols()];
                for (i, p) in nf.into_iter().enumerate() {
                    v[l * ntgt + i] = p;
                }
                v
            };
            coords.extend(columns_to_coordinates(&[shifted], &mut index).remove(0));
        }
        columns.push(coords);
    }
    let nconds = index.len();
    let dense_cols = densify(&columns, nconds);
    let rows: Vec<Vec<u32>> = (0..nconds)
        .map(|r| dense_cols.iter().map(|c| c[r]).collect())
        .collect();
    let sols = nullspace(k, &rows, params.len());
    sols.into_iter()
        .map(|x| {
            let mut cols: Vec<Column> = vec![vec![Polynomial::zero(&ring); ntgt]; gsrc.len()];
            for (coef, (j, b)) in x.iter().zip(&params) {
                if *coef == 0 {
                    continue;
                }
                for (i, p) in b.iter().enumerate() {
                    if !p.is_zero() {
                        cols[*j][i] = &cols[*j][i] + &p.scale(*coef);
                    }
                }
            }
            GradedMap::from_columns(&ring, source.clone(), tgt.generators().clone(), cols)
        })
        .collect()
}

/// `ann(M) = ∩_i (im φ : e_i)`.
pub fn annihilator(m: &ModulePresentation) -> Result<GradedIdeal> {
    let ring = m.ring().clone();
    let n = m.generators().rank();
    let mut acc = GradedIdeal::unit(&ring);
    for i in 0..n {
        let mut e = vec![Polynomial::zero(&ring); n];
        e[i] = Polynomial::one(&ring);
        let mut cols = vec![e];
        cols.extend(m.map().columns().iter().cloned());
        let mut sdeg = vec![m.generators().degrees()[i]];
        sdeg.extend_from_slice(m.relations().degrees());
        let gens: Vec<Polynomial> = syzygies(&ring, m.generators().degrees(), &cols, &sdeg)
            .into_iter()
            .map(|c| c[0].clone())
            .filter(|p| !p.is_zero())
            .collect();
        let ann_i = GradedIdeal::from_homogeneous(&ring, gens);
        acc = crate::groebner::intersect(&acc, &ann_i)?;
    }
    Ok(acc)
}
