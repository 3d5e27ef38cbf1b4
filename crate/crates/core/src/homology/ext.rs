//! Ext modules into the ambient ring, graded duals and deficiency modules via
//! local duality.

use std::collections::BTreeMap;

use super::free::{FreeGradedModule, GradedMap};
use super::presentation::{kernel_generators, presentation_of_ideal, subquotient, ModulePresentation};
use super::resolution::{free_resolution, FreeResolution};
use crate::error::{usage, Result};
use crate::groebner::GradedIdeal;
use crate::hilbert::HilbertSeries;

/// `Hom(-, P)` applied to a map: the transpose with negated degrees.
pub fn hom_into_ring(m: &GradedMap) -> GradedMap {
    m.transpose()
}

/// `Ext^i(M, P)` from a resolution of `M`, as the subquotient
/// `ker(d_{i+1}^T) / im(d_i^T)` of `F_i^∨`.
pub fn ext_from_resolution(r: &FreeResolution, i: usize) -> ModulePresentation {
    let ring = r.ring().clone();
    let fi = r.module(i).dual();
    if fi.rank() == 0 {
        return ModulePresentation::zero(&ring);
    }
    let image = if i == 0 {
        GradedMap::zero(&ring, FreeGradedModule::zero(), fi.clone())
    } else {
        hom_into_ring(r.map(i))
    };
    if i >= r.length() {
        return ModulePresentation::new(image).minimalize();
    }
    let next = hom_into_ring(r.map(i + 1));
    let ker = kernel_generators(&next);
    subquotient(&ker, &image)
}

/// `Ext^i(M, P)` for `0 ≤ i ≤ pd M` (index `i` of the returned list).
pub fn ext_modules(p: &ModulePresentation, cap: usize) -> Result<Vec<ModulePresentation>> {
    let r = free_resolution(p, cap)?;
    if !r.is_complete() {
        return usage("resolution did not terminate within the cap");
    }
    Ok((0..=r.length()).map(|i| ext_from_resolution(&r, i)).collect())
}

/// `Ext^i(M, P)` for a single index.
pub fn ext_module(p: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    let v = p.ring().nvars();
    let r = free_resolution(p, v + 1)?;
    Ok(ext_from_resolution(&r, i))
}

/// The graded dual `Hom_k(E, k)` of a finite-length module, realized as
/// `Ext^v(E, P(-v))`.
pub fn graded_dual(p: &ModulePresentation) -> Result<ModulePresentation> {
    if p.hilbert_series().dimension() != 0 {
        return usage("graded dual needs a finite-length module");
    }
    if p.is_zero() {
        return Ok(ModulePresentation::zero(p.ring()));
    }
    let v = p.ring().nvars();
    Ok(ext_module(p, v)?.twist(-(v as i32)))
}

/// `H^i_*` of the sheaf associated to `N`, for `i ≥ 1`, as the module
/// `Ext^v(Ext^{v-1-i}(N, P), P)`; its Hilbert function is
/// `n ↦ dim Ext^{v-1-i}(N, P)_{-n-v}`.
#[derive(Clone, Debug)]
pub struct DeficiencyModule {
    /// `Ext^{v-1-i}(N, P)`.
    pub ext: ModulePresentation,
    /// The module itself when the Ext module has finite length.
    pub module: Option<ModulePresentation>,
    /// Nonzero Hilbert function values when finite.
    pub table: Option<BTreeMap<i32, i64>>,
    pub finite: bool,
}

impl DeficiencyModule {
    pub fn is_zero(&self) -> bool {
        self.ext.is_zero()
    }

    /// Nonzero Hilbert function values, empty for the zero module.
    pub fn finite_table(&self) -> BTreeMap<i32, i64> {
        self.table.clone().unwrap_or_default()
    }

    /// Hilbert function at `n`, read off the Ext module by local duality.
    pub fn hilbert_function(&self, n: i32, nvars: usize) -> i64 {
        self.ext.hilbert_function(-n - nvars as i32)
    }
}

/// Reverses a finite Hilbert table with a shift: `n ↦ T(-n - s)`.
pub fn reverse_table(t: &BTreeMap<i32, i64>, s: i32) -> BTreeMap<i32, i64> {
    t.iter().map(|(&d, &v)| (-d - s, v)).collect()
}

/// `H^i_*(Ñ)` for a module `N` over the ambient ring and `i ≥ 1`.
pub fn sheaf_cohomology_module(n: &ModulePresentation, i: usize) -> Result<DeficiencyModule> {
    let v = n.ring().nvars();
    if i == 0 || i + 1 > v {
        return usage("cohomological index must satisfy 1 ≤ i ≤ v - 1");
    }
    let r = free_resolution(n, v + 1)?;
    let ext = ext_from_resolution(&r, v - 1 - i);
    finish(ext, v)
}

fn finish(ext: ModulePresentation, v: usize) -> Result<DeficiencyModule> {
    let hs: HilbertSeries = ext.hilbert_series();
    if ext.is_zero() {
        return Ok(DeficiencyModule {
            module: Some(ModulePresentation::zero(ext.ring())),
            table: Some(BTreeMap::new()),
            finite: true,
            ext,
        });
    }
    if hs.dimension() != 0 {
        return Ok(DeficiencyModule {
            module: None,
            table: None,
            finite: false,
            ext,
        });
    }
    let table = reverse_table(&hs.finite_table().expect("finite length"), v as i32);
    let module = ext_module(&ext, v)?;
    Ok(DeficiencyModule {
        module: Some(module),
        table: Some(table),
        finite: true,
        ext,
    })
}

/// `H^i_*(I~)` of the ideal sheaf of `V(I)`, computed as
/// `Ext^{v-i}(P/I, P)` by local duality.
pub fn deficiency_module(i_ideal: &GradedIdeal, i: usize) -> Result<DeficiencyModule> {
    let v = i_ideal.ring().nvars();
    if i == 0 || i >= v {
        return usage("cohomological index must satisfy 1 ≤ i ≤ v - 1");
    }
    let q = presentation_of_ideal(i_ideal, None, false)?;
    let r = free_resolution(&q, v + 1)?;
    let ext = ext_from_resolution(&r, v - i);
    finish(ext, v)
}
