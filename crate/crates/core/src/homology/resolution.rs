//! Minimal graded free resolutions and Betti tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::free::{FreeGradedModule, GradedMap};
use super::presentation::{kernel_generators, ModulePresentation};
use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::groebner::Column;
use crate::hilbert::HilbertSeries;
use crate::ring::PolyRing;

/// `F_0 ← F_1 ← … ← F_ℓ` given by the maps `d_1, …, d_ℓ`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<PolyRing>,
    f0: FreeGradedModule,
    maps: Vec<GradedMap>,
    minimal: bool,
    complete: bool,
}

impl FreeResolution {
    pub fn from_maps(ring: &Arc<PolyRing>, f0: FreeGradedModule, maps: Vec<GradedMap>, minimal: bool, complete: bool) -> Self {
        FreeResolution {
            ring: ring.clone(),
            f0,
            maps,
            minimal,
            complete,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    /// `d_i` for `1 ≤ i ≤ length`.
    pub fn map(&self, i: usize) -> &GradedMap {
        &self.maps[i - 1]
    }

    /// `F_i` (zero beyond the length).
    pub fn module(&self, i: usize) -> FreeGradedModule {
        if i == 0 {
            self.f0.clone()
        } else if i <= self.maps.len() {
            self.maps[i - 1].source().clone()
        } else {
            FreeGradedModule::zero()
        }
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// False when the length cap was hit before the kernel vanished.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).is_zero())
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for i in 0..=self.length() {
            for &d in self.module(i).degrees() {
                *t.entries.entry((i, d)).or_default() += 1;
            }
        }
        t.entries.retain(|_, v| *v > 0);
        t
    }

    /// Cancels constant entries, adjusting neighbouring maps.
    pub fn minimalize(&self) -> FreeResolution {
        let k = self.ring.field();
        let mut f0 = self.f0.clone();
        let mut maps = self.maps.clone();
        'outer: loop {
            for idx in 0..maps.len() {
                if let Some(&(r, c)) = maps[idx].unit_entries().first() {
                    cancel_unit(k, &self.ring, &mut f0, &mut maps, idx, r, c);
                    continue 'outer;
                }
            }
            break;
        }
        while maps.last().is_some_and(|m| m.ncols() == 0) {
            maps.pop();
        }
        FreeResolution {
            ring: self.ring.clone(),
            f0,
            maps,
            minimal: true,
            complete: self.complete,
        }
    }

    /// The presented module `coker d_1`.
    pub fn presented(&self) -> ModulePresentation {
        match self.maps.first() {
            Some(d) => ModulePresentation::new(d.clone()),
            None => ModulePresentation::free(&self.ring, self.f0.clone()),
        }
    }

    /// `Σ (-1)^i Σ_j β_ij t^j` as a Hilbert series numerator.
    pub fn euler_series(&self) -> HilbertSeries {
        self.betti_table().euler_series(self.ring.nvars())
    }

    /// Exactness of the complex at every interior spot, checked by comparing
    /// the kernel of `d_i` with the image of `d_{i+1}`.
    pub fn is_exact(&self) -> bool {
        for i in 1..=self.length() {
            let ker = kernel_generators(self.map(i));
            let img = if i < self.length() {
                self.map(i + 1).columns().to_vec()
            } else {
                Vec::new()
            };
            let gb = crate::groebner::ModuleGb::new(&self.ring, self.module(i).degrees(), &img);
            if !ker.columns().iter().all(|c| gb.contains(c)) {
                return false;
            }
        }
        true
    }
}

fn cancel_unit(
    k: PrimeField,
    ring: &Arc<PolyRing>,
    f0: &mut FreeGradedModule,
    maps: &mut [GradedMap],
    idx: usize,
    r: usize,
    c: usize,
) {
    let d = &maps[idx];
    let u = d.entry(r, c).as_nonzero_constant().expect("unit");
    let uinv = k.inv(u).expect("nonzero");
    let pivot: Column = d.columns()[c].clone();
    let mut cols: Vec<Column> = Vec::new();
    for (l, col) in d.columns().iter().enumerate() {
        if l == c {
            continue;
        }
        let a = col[r].scale(uinv);
        let mut v: Column = col
            .iter()
            .zip(&pivot)
            .map(|(x, y)| if a.is_zero() || y.is_zero() { x.clone() } else { x - &(&a * y) })
            .collect();
        v.remove(r);
        cols.push(v);
    }
    let keep_src: Vec<usize> = (0..d.ncols()).filter(|&l| l != c).collect();
    let keep_tgt: Vec<usize> = (0..d.nrows()).filter(|&l| l != r).collect();
    let src = FreeGradedModule::from_degrees(keep_src.iter().map(|&l| d.source().degrees()[l]).collect());
    let tgt = FreeGradedModule::from_degrees(keep_tgt.iter().map(|&l| d.target().degrees()[l]).collect());
    maps[idx] = GradedMap::from_columns(ring, src, tgt.clone(), cols);
    if idx == 0 {
        *f0 = tgt;
    } else {
        let prev = &maps[idx - 1];
        let keep: Vec<usize> = (0..prev.ncols()).filter(|&l| l != r).collect();
        maps[idx - 1] = prev.select_columns(&keep);
    }
    if idx + 1 < maps.len() {
        let next = &maps[idx + 1];
        let keep: Vec<usize> = (0..next.nrows()).filter(|&l| l != c).collect();
        maps[idx + 1] = next.select_rows(&keep);
    }
}

/// Minimal free resolution of `coker(p)`, up to `cap` maps.
pub fn free_resolution(p: &ModulePresentation, cap: usize) -> Result<FreeResolution> {
    if cap == 0 {
        return usage("resolution length cap must be at least 1");
    }
    let ring = p.ring().clone();
    let pres = p.minimalize();
    let f0 = pres.generators().clone();
    let mut maps: Vec<GradedMap> = Vec::new();
    let mut d1 = pres.map().clone();
    super::presentation::sort_columns_by_degree(&mut d1);
    if d1.ncols() == 0 {
        return Ok(FreeResolution::from_maps(&ring, f0, maps, true, true));
    }
    maps.push(d1);
    loop {
        let last = maps.last().expect("nonempty");
        let next = kernel_generators(last);
        if next.ncols() == 0 {
            return Ok(FreeResolution::from_maps(&ring, f0, maps, true, true));
        }
        if maps.len() == cap {
            return Ok(FreeResolution::from_maps(&ring, f0, maps, true, false));
        }
        maps.push(next);
    }
}

/// `β_{i,j}`: rank of the degree-`j` part of `F_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

#[derive(Serialize)]
struct BettiEntry {
    i: usize,
    j: i32,
    rank: usize,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<BettiEntry> = self
            .entries
            .iter()
            .map(|(&(i, j), &rank)| BettiEntry { i, j, rank })
            .collect();
        v.serialize(s)
    }
}

impl BettiTable {
    pub fn from_entries(entries: &[(usize, i32, usize)]) -> Self {
        let mut t = BettiTable::default();
        for &(i, j, r) in entries {
            if r > 0 {
                *t.entries.entry((i, j)).or_default() += r;
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total rank of `F_i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((a, _), _)| *a == i)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.length()).map(|i| self.total(i)).collect()
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn euler_series(&self, nvars: usize) -> HilbertSeries {
        let mut acc = HilbertSeries::of_free(nvars, &[]);
        for (&(i, j), &r) in &self.entries {
            let term = HilbertSeries::of_free(nvars, &vec![j; r]);
            acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// `β_{i,j} = β_{c-i, σ-j}` with `c` the length and `σ` the top degree.
    pub fn is_symmetric(&self) -> bool {
        let c = self.length();
        let Some(sigma) = self.entries.keys().filter(|(i, _)| *i == c).map(|(_, j)| *j).max() else {
            return true;
        };
        self.entries
            .iter()
            .all(|(&(i, j), &r)| self.get(c - i, sigma - j) == r)
    }

    /// The table of `M(-h)`: every degree increases by `h`.
    pub fn translate(&self, h: i32) -> BettiTable {
        BettiTable {
            entries: self.entries.iter().map(|(&(i, j), &r)| ((i, j + h), r)).collect(),
        }
    }

    /// `Some(h)` when `other` equals this table translated by `h`.
    pub fn translate_to(&self, other: &BettiTable) -> Option<i32> {
        let a = self.entries.keys().next()?;
        let b = other.entries.keys().next()?;
        if a.0 != b.0 {
            return None;
        }
        let h = b.1 - a.1;
        (self.translate(h) == *other).then_some(h)
    }

    /// Rows indexed by `j - i`, columns by `i`, in the usual layout.
    pub fn to_text(&self) -> String {
        if self.entries.is_empty() {
            return "      (zero)\n".to_string();
        }
        let len = self.length();
        let rows: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i as i32).collect();
        let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let mut out = String::new();
        out.push_str("      ");
        for i in 0..=len {
            out.push_str(&format!("{i:>5}"));
        }
        out.push('\n');
        out.push_str("total:");
        for i in 0..=len {
            out.push_str(&format!("{:>5}", self.total(i)));
        }
        out.push('\n');
        for r in lo..=hi {
            out.push_str(&format!("{r:>5}:"));
            for i in 0..=len {
                let v = self.get(i, r + i as i32);
                if v == 0 {
                    out.push_str(&format!("{:>5}", "."));
                } else {
                    out.push_str(&format!("{v:>5}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Projective dimension and depth (Auslander–Buchsbaum) from a minimal
/// resolution.
pub fn pd_and_depth(r: &FreeResolution) -> Result<(usize, usize)> {
    if !r.is_minimal() {
        return usage("pd_and_depth needs a minimal resolution");
    }
    if !r.is_complete() {
        return usage("resolution was truncated before exactness");
    }
    let pd = r.length();
    let v = r.ring().nvars();
    Ok((pd, v.saturating_sub(pd)))
}
