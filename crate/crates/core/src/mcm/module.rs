//! ACM (maximal Cohen–Macaulay) module checks on a hypersurface and
//! extensions of presented modules.

use std::collections::BTreeMap;

use serde::Serialize;

use super::mf::{mf_complete, mf_verify, MatrixFactorization};
use crate::error::{usage, Result};
use crate::homology::{
    free_resolution, hf_exact, kernel_generators, sheaf_cohomology_module, BettiTable, FreeResolution,
    GradedMap, ModulePresentation,
};

/// A module over `P/(f)` with a length-one minimal resolution over `P`, and
/// the matrix factorization read off that resolution.
#[derive(Clone, Debug)]
pub struct MCMModuleRecord {
    pub module: ModulePresentation,
    pub resolution: FreeResolution,
    pub mf: MatrixFactorization,
    pub rank: usize,
    pub h1: BTreeMap<i32, i64>,
    pub h2: BTreeMap<i32, i64>,
}

impl MCMModuleRecord {
    pub fn betti_table(&self) -> BettiTable {
        self.resolution.betti_table()
    }
}

/// Result of [`acm_module_check`].
#[derive(Clone, Debug)]
pub enum AcmOutcome {
    Acm(Box<MCMModuleRecord>),
    NotAcm {
        projective_dimension: usize,
        /// `None` when the cohomology module does not have finite length.
        h1: Option<BTreeMap<i32, i64>>,
        h2: Option<BTreeMap<i32, i64>>,
        reason: String,
    },
}

impl AcmOutcome {
    pub fn is_acm(&self) -> bool {
        matches!(self, AcmOutcome::Acm(_))
    }

    pub fn record(&self) -> Option<&MCMModuleRecord> {
        match self {
            AcmOutcome::Acm(r) => Some(r),
            AcmOutcome::NotAcm { .. } => None,
        }
    }

    pub fn into_record(self) -> Option<MCMModuleRecord> {
        match self {
            AcmOutcome::Acm(r) => Some(*r),
            AcmOutcome::NotAcm { .. } => None,
        }
    }
}

fn cohomology_table(e: &ModulePresentation, i: usize) -> Result<Option<BTreeMap<i32, i64>>> {
    let d = sheaf_cohomology_module(e, i)?;
    Ok(d.finite.then(|| d.finite_table()))
}

/// Decides whether a module over `P/(f)` is maximal Cohen–Macaulay by the
/// length of its minimal resolution over `P`.
pub fn acm_module_check(e: &ModulePresentation) -> Result<AcmOutcome> {
    let Some(f) = e.modulus().cloned() else {
        return usage("the ACM check needs a module over a hypersurface ring");
    };
    if e.is_zero() {
        return usage("the zero module has no rank");
    }
    let v = e.ring().nvars();
    let r = free_resolution(e, v + 1)?;
    let h1 = cohomology_table(e, 1)?;
    let h2 = cohomology_table(e, 2)?;
    let pd = r.length();
    if pd != 1 {
        return Ok(AcmOutcome::NotAcm {
            projective_dimension: pd,
            h1,
            h2,
            reason: format!("projective dimension {pd} over the ambient ring"),
        });
    }
    let phi = r.map(1).clone();
    let mf = mf_complete(&phi, &f)?;
    let report = mf_verify(&mf);
    if !report.valid {
        return Ok(AcmOutcome::NotAcm {
            projective_dimension: pd,
            h1,
            h2,
            reason: format!("extracted factorization fails: {:?}", report.offending),
        });
    }
    Ok(AcmOutcome::Acm(Box::new(MCMModuleRecord {
        module: e.clone(),
        rank: mf.rank,
        mf,
        resolution: r,
        h1: h1.unwrap_or_default(),
        h2: h2.unwrap_or_default(),
    })))
}

/// An extension `0 → A → E → B → 0` given by a map from the relation module
/// of `B` to the generators of `A`.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub a: ModulePresentation,
    pub b: ModulePresentation,
    pub cocycle: GradedMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionOutcome {
    #[serde(skip)]
    pub module: ModulePresentation,
    pub hf_additive: bool,
    pub split: bool,
    pub betti: BettiTable,
}

/// Degree window on which additivity of Hilbert functions is checked.
pub const HF_WINDOW: (i32, i32) = (-10, 10);

/// `coker [[rel_A, c], [0, rel_B]]`.
pub fn extension_module(c: &ExtensionClass) -> Result<ExtensionOutcome> {
    let (a, b) = (&c.a, &c.b);
    let ring = a.ring().clone();
    if c.cocycle.source() != b.relations() || c.cocycle.target() != a.generators() {
        return usage("cocycle must map the relations of B to the generators of A");
    }
    if let Some((i, j)) = c.cocycle.first_incompatible_entry() {
        return usage(format!("cocycle entry ({i}, {j}) has the wrong degree"));
    }
    let syz2 = kernel_generators(b.map());
    for (k, s) in syz2.columns().iter().enumerate() {
        if !a.is_zero_element(&c.cocycle.apply(s)) {
            return usage(format!("cocycle does not vanish on second syzygy {k} of B"));
        }
    }
    let left = a.map().vconcat(&GradedMap::zero(&ring, a.relations().clone(), b.generators().clone()));
    let right = c.cocycle.vconcat(b.map());
    let module = ModulePresentation::new(left.hconcat(&right))
        .with_modulus_label(a.modulus().or(b.modulus()).cloned());
    let (lo, hi) = HF_WINDOW;
    let hf_additive = hf_exact(&a.hilbert_series(), &module.hilbert_series(), &b.hilbert_series(), lo, hi)
        && module.hilbert_series() == a.hilbert_series().add(&b.hilbert_series());
    let v = ring.nvars();
    let betti = free_resolution(&module, v + 1)?.betti_table();
    let sum = free_resolution(&a.direct_sum(b), v + 1)?.betti_table();
    Ok(ExtensionOutcome {
        split: betti == sum,
        module,
        hf_additive,
        betti,
    })
}
