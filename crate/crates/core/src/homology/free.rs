//! Graded free modules and degree-compatible matrices between them.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{usage, Result};
use crate::groebner::{column_degree, Column};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// `⊕ P(-d_i)`, recorded by the generator degrees `d_i`. The twist of the
/// `i`-th summand is `-d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct FreeGradedModule {
    degrees: Vec<i32>,
}

impl FreeGradedModule {
    pub fn from_degrees(degrees: Vec<i32>) -> Self {
        FreeGradedModule { degrees }
    }

    /// `⊕ P(a_i)` from twists `a_i`.
    pub fn from_twists(twists: &[i32]) -> Self {
        FreeGradedModule {
            degrees: twists.iter().map(|a| -a).collect(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn twists(&self) -> Vec<i32> {
        self.degrees.iter().map(|d| -d).collect()
    }

    pub fn dual(&self) -> Self {
        Self::from_degrees(self.degrees.iter().map(|d| -d).collect())
    }

    /// `F(a)`: every generator degree drops by `a`.
    pub fn twist(&self, a: i32) -> Self {
        Self::from_degrees(self.degrees.iter().map(|d| d - a).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        Self::from_degrees(d)
    }

    /// Canonical form: twists weakly decreasing (degrees increasing).
    pub fn is_canonical(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] <= w[1])
    }
}

/// A matrix of polynomials between graded free modules. Entry `(i, j)` is
/// zero or homogeneous of degree `source[j] - target[i]`.
#[derive(Clone, PartialEq)]
pub struct GradedMap {
    ring: Arc<PolyRing>,
    source: FreeGradedModule,
    target: FreeGradedModule,
    cols: Vec<Column>,
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GradedMap {:?} -> {:?}",
            self.source.degrees(),
            self.target.degrees()
        )?;
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols()).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl GradedMap {
    /// Checked constructor from columns.
    pub fn new(
        ring: &Arc<PolyRing>,
        source: FreeGradedModule,
        target: FreeGradedModule,
        cols: Vec<Column>,
    ) -> Result<Self> {
        let m = Self::from_columns(ring, source, target, cols);
        if m.cols.len() != m.source.rank() || m.cols.iter().any(|c| c.len() != m.target.rank()) {
            return usage("matrix shape does not match the free modules");
        }
        if let Some((i, j)) = m.first_incompatible_entry() {
            return usage(format!(
                "entry ({i}, {j}) = {} is not homogeneous of degree {}",
                m.entry(i, j),
                m.source.degrees()[j] - m.target.degrees()[i]
            ));
        }
        Ok(m)
    }

    /// Unchecked constructor; shapes are asserted, degrees are trusted.
    pub fn from_columns(
        ring: &Arc<PolyRing>,
        source: FreeGradedModule,
        target: FreeGradedModule,
        cols: Vec<Column>,
    ) -> Self {
        assert_eq!(cols.len(), source.rank(), "column count");
        assert!(cols.iter().all(|c| c.len() == target.rank()), "column length");
        GradedMap {
            ring: ring.clone(),
            source,
            target,
            cols,
        }
    }

    /// Builds a map from rows, inferring source degrees from the given target
    /// degrees. Zero columns need `fallback` degrees.
    pub fn from_rows_with_target(
        ring: &Arc<PolyRing>,
        target: FreeGradedModule,
        rows: Vec<Vec<Polynomial>>,
        fallback: i32,
    ) -> Result<Self> {
        let nrows = rows.len();
        if nrows != target.rank() {
            return usage("row count does not match target rank");
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return usage("ragged matrix");
        }
        let cols: Vec<Column> = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        let mut sdeg = Vec::with_capacity(ncols);
        for (j, c) in cols.iter().enumerate() {
            if c.iter().all(|p| p.is_zero()) {
                sdeg.push(fallback);
            } else {
                match column_degree(target.degrees(), c) {
                    Some(d) => sdeg.push(d),
                    None => return usage(format!("column {j} is not homogeneous")),
                }
            }
        }
        Self::new(ring, FreeGradedModule::from_degrees(sdeg), target, cols)
    }

    pub fn zero(ring: &Arc<PolyRing>, source: FreeGradedModule, target: FreeGradedModule) -> Self {
        let cols = vec![vec![Polynomial::zero(ring); target.rank()]; source.rank()];
        Self::from_columns(ring, source, target, cols)
    }

    pub fn identity(ring: &Arc<PolyRing>, f: &FreeGradedModule) -> Self {
        Self::scalar(ring, f, &Polynomial::one(ring), 0)
    }

    /// `p · id : F(-deg) → F`.
    pub fn scalar(ring: &Arc<PolyRing>, f: &FreeGradedModule, p: &Polynomial, deg: i32) -> Self {
        let n = f.rank();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { p.clone() } else { Polynomial::zero(ring) })
                    .collect()
            })
            .collect();
        Self::from_columns(ring, f.twist(-deg), f.clone(), cols)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn source(&self) -> &FreeGradedModule {
        &self.source
    }

    pub fn target(&self) -> &FreeGradedModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Column> {
        self.cols
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// First entry violating degree compatibility, if any.
    pub fn first_incompatible_entry(&self) -> Option<(usize, usize)> {
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                let want = self.source.degrees()[j] - self.target.degrees()[i];
                if want < 0 || e.homogeneous_degree() != Some(want as u32) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_degree_compatible(&self) -> bool {
        self.first_incompatible_entry().is_none()
    }

    /// Positions of nonzero constant entries.
    pub fn unit_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                if self.entry(i, j).as_nonzero_constant().is_some() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Image of a column vector of the source.
    pub fn apply(&self, v: &[Polynomial]) -> Column {
        let mut out = vec![Polynomial::zero(&self.ring); self.nrows()];
        for (j, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = &self.cols[j][i];
                if !e.is_zero() {
                    *o = &*o + &(a * e);
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(other.nrows(), self.ncols(), "composition shape");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        GradedMap::from_columns(&self.ring, other.source.clone(), self.target.clone(), cols)
    }

    /// `Hom(-, P)` of the map: the transpose between dual free modules.
    pub fn transpose(&self) -> GradedMap {
        let cols = (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        GradedMap::from_columns(&self.ring, self.target.dual(), self.source.dual(), cols)
    }

    /// The map with source and target twisted by `a`.
    pub fn twist(&self, a: i32) -> GradedMap {
        GradedMap::from_columns(&self.ring, self.source.twist(a), self.target.twist(a), self.cols.clone())
    }

    pub fn neg(&self) -> GradedMap {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|p| p.neg()).collect())
            .collect();
        GradedMap::from_columns(&self.ring, self.source.clone(), self.target.clone(), cols)
    }

    pub fn scale(&self, p: &Polynomial, deg: i32) -> GradedMap {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|e| e * p).collect())
            .collect();
        GradedMap::from_columns(&self.ring, self.source.twist(-deg), self.target.clone(), cols)
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.nrows(), other.nrows());
        assert_eq!(self.ncols(), other.ncols());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        GradedMap::from_columns(&self.ring, self.source.clone(), self.target.clone(), cols)
    }

    /// `[self | other]` with a common target.
    pub fn hconcat(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.nrows(), other.nrows(), "hconcat rows");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        GradedMap::from_columns(
            &self.ring,
            self.source.direct_sum(&other.source),
            self.target.clone(),
            cols,
        )
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        let z = Polynomial::zero(&self.ring);
        let mut cols: Vec<Column> = self
            .cols
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.extend(std::iter::repeat(z.clone()).take(other.nrows()));
                c
            })
            .collect();
        for c in &other.cols {
            let mut v = vec![z.clone(); self.nrows()];
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        GradedMap::from_columns(
            &self.ring,
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            cols,
        )
    }

    /// Stacks `self` over `other` (common source).
    pub fn vconcat(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.ncols(), other.ncols(), "vconcat columns");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().cloned());
                c
            })
            .collect();
        GradedMap::from_columns(
            &self.ring,
            self.source.clone(),
            self.target.direct_sum(&other.target),
            cols,
        )
    }

    pub fn select_columns(&self, idx: &[usize]) -> GradedMap {
        let cols = idx.iter().map(|&j| self.cols[j].clone()).collect();
        let src = FreeGradedModule::from_degrees(idx.iter().map(|&j| self.source.degrees()[j]).collect());
        GradedMap::from_columns(&self.ring, src, self.target.clone(), cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> GradedMap {
        let cols = self
            .cols
            .iter()
            .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
            .collect();
        let tgt = FreeGradedModule::from_degrees(idx.iter().map(|&i| self.target.degrees()[i]).collect());
        GradedMap::from_columns(&self.ring, self.source.clone(), tgt, cols)
    }

    /// Keeps only nonzero columns.
    pub fn drop_zero_columns(&self) -> GradedMap {
        let idx: Vec<usize> = (0..self.ncols())
            .filter(|&j| self.cols[j].iter().any(|p| !p.is_zero()))
            .collect();
        self.select_columns(&idx)
    }

    /// Same entries with every variable substituted by the given images.
    pub fn substitute(&self, images: &[Polynomial]) -> GradedMap {
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|p| p.substitute(images)).collect())
            .collect();
        GradedMap::from_columns(&self.ring, self.source.clone(), self.target.clone(), cols)
    }
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant(ring: &Arc<PolyRing>, rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for j in 0..n {
        let a = &rows[0][j];
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = a * &determinant(ring, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
