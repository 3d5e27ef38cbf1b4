//! Subschemes given by saturated homogeneous ideals, with cached invariants
//! and the ACM / AG / CI / unmixed predicates.

use std::sync::{Arc, OnceLock};

use crate::error::{usage, Result};
use crate::groebner::{saturate, GradedIdeal, Saturation};
use crate::hilbert::HilbertSeries;
use crate::homology::{ext_from_resolution, free_resolution, presentation_of_ideal, BettiTable, FreeResolution};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingDescriptor};

#[derive(Debug)]
struct Cached {
    resolution: FreeResolution,
    series: HilbertSeries,
}

/// A closed subscheme of `P^n` (possibly regarded inside the hypersurface of
/// the descriptor), by its saturated ideal in the ambient ring.
#[derive(Clone, Debug)]
pub struct SubschemeRecord {
    ambient: RingDescriptor,
    ideal: GradedIdeal,
    label: Option<String>,
    cache: Arc<OnceLock<Cached>>,
}

impl SubschemeRecord {
    /// Saturates the ideal (and adds the hypersurface equation, if any).
    pub fn new(ambient: &RingDescriptor, ideal: GradedIdeal) -> Result<Self> {
        if **ideal.ring() != *ambient.ring {
            return usage("ideal lives in a different ring");
        }
        let ideal = match &ambient.modulus {
            Some(f) if !ideal.contains(f) => ideal.with_generators(std::slice::from_ref(f)),
            _ => ideal,
        };
        let ideal = match ideal.saturation_status() {
            Saturation::Saturated => ideal,
            _ => saturate(&ideal, None)?,
        };
        Ok(SubschemeRecord {
            ambient: ambient.clone(),
            ideal,
            label: None,
            cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_generators(ambient: &RingDescriptor, gens: &[&str]) -> Result<Self> {
        let ideal = GradedIdeal::parse(&ambient.ring, gens)?;
        Self::new(ambient, ideal)
    }

    /// Fails with a usage error unless the ideal is already saturated.
    pub fn require_saturated(ambient: &RingDescriptor, ideal: GradedIdeal) -> Result<Self> {
        let sat = saturate(&ideal, None)?;
        if sat != ideal {
            return usage("ideal is not saturated");
        }
        Self::new(ambient, sat)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn ambient(&self) -> &RingDescriptor {
        &self.ambient
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ambient.ring
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        self.ambient.modulus.as_ref()
    }

    pub fn ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    fn cached(&self) -> &Cached {
        self.cache.get_or_init(|| {
            let p = presentation_of_ideal(&self.ideal, None, false).expect("ideal presentation");
            let v = self.ring().nvars();
            let resolution = free_resolution(&p, v + 1).expect("resolution");
            Cached {
                resolution,
                series: crate::hilbert::hilbert_series(&self.ideal),
            }
        })
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        &self.cached().series
    }

    pub fn hilbert_function(&self, n: i32) -> i64 {
        self.hilbert_series().hilbert_function(n)
    }

    /// Minimal free resolution of the coordinate ring over the ambient ring.
    pub fn resolution(&self) -> &FreeResolution {
        &self.cached().resolution
    }

    pub fn betti_table(&self) -> BettiTable {
        self.resolution().betti_table()
    }

    pub fn is_empty(&self) -> bool {
        self.ideal.is_unit() || self.hilbert_series().dimension() == 0
    }

    /// Projective dimension; `-1` for the empty scheme.
    pub fn dimension(&self) -> i32 {
        self.hilbert_series().dimension() as i32 - 1
    }

    /// Codimension in the ambient projective space.
    pub fn codimension(&self) -> usize {
        self.ring().nvars() - self.hilbert_series().dimension()
    }

    /// Codimension inside the hypersurface (equal to the ambient one without).
    pub fn codimension_in_x(&self) -> usize {
        self.codimension() - usize::from(self.modulus().is_some())
    }

    pub fn degree(&self) -> i64 {
        self.hilbert_series().degree()
    }

    pub fn projective_dimension(&self) -> usize {
        self.resolution().length()
    }

    pub fn is_acm(&self) -> bool {
        self.projective_dimension() == self.codimension()
    }

    pub fn is_ag(&self) -> bool {
        let r = self.resolution();
        self.is_acm() && r.module(r.length()).rank() == 1
    }

    pub fn is_ci(&self) -> bool {
        self.ideal.minimal_generators().len() == self.codimension()
    }

    /// Unmixedness by the Ext-codimension criterion: `codim Ext^j(R/I, R) ≥ j + 1`
    /// for every `j` above the codimension.
    pub fn is_unmixed(&self) -> bool {
        let r = self.resolution();
        let c = self.codimension();
        let v = self.ring().nvars();
        (c + 1..=r.length()).all(|j| {
            let e = ext_from_resolution(r, j);
            e.is_zero() || v - e.hilbert_series().dimension() >= j + 1
        })
    }
}
