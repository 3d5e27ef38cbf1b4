//! Rao modules of curves and the shift-equivalence test between them.

use std::collections::BTreeMap;

use serde::Serialize;

use super::record::SubschemeRecord;
use crate::error::{Error, Result};
use crate::homology::{deficiency_module, free_resolution, BettiTable, ModulePresentation};

/// `M_C = H^1_*(I_C)` with its Hilbert function and minimal Betti numbers.
#[derive(Clone, Debug)]
pub struct RaoModuleRecord {
    pub module: ModulePresentation,
    pub table: BTreeMap<i32, i64>,
    pub betti: BettiTable,
}

#[derive(Serialize)]
struct RaoSummary<'a> {
    hilbert: Vec<(i32, i64)>,
    betti: &'a BettiTable,
}

impl Serialize for RaoModuleRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RaoSummary {
            hilbert: self.table.iter().map(|(&a, &b)| (a, b)).collect(),
            betti: &self.betti,
        }
        .serialize(s)
    }
}

impl RaoModuleRecord {
    /// Wraps a finite-length module.
    pub fn from_module(module: ModulePresentation) -> Result<Self> {
        let hs = module.hilbert_series();
        let table = if module.is_zero() {
            BTreeMap::new()
        } else {
            hs.finite_table()
                .ok_or_else(|| Error::Usage("Rao module must have finite length".into()))?
        };
        let betti = if module.is_zero() {
            BettiTable::default()
        } else {
            let v = module.ring().nvars();
            free_resolution(&module, v + 1)?.betti_table()
        };
        Ok(RaoModuleRecord { module, table, betti })
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn total_dimension(&self) -> i64 {
        self.table.values().sum()
    }
}

/// `H^1_*(I_C)` by local duality; finite length is asserted.
pub fn rao_module(c: &SubschemeRecord) -> Result<RaoModuleRecord> {
    let d = deficiency_module(c.ideal(), 1)?;
    if !d.finite {
        return Err(Error::Construction(
            "first deficiency module does not have finite length".into(),
        ));
    }
    let module = d.module.expect("finite deficiency module");
    let betti = if module.is_zero() {
        BettiTable::default()
    } else {
        let v = module.ring().nvars();
        free_resolution(&module, v + 1)?.betti_table()
    };
    Ok(RaoModuleRecord {
        module,
        table: d.table.expect("finite"),
        betti,
    })
}

/// `Some(h)` when the table of `b` is the table of `a` moved up by `h`
/// (`b = a(-h)`).
pub fn table_shift(a: &BTreeMap<i32, i64>, b: &BTreeMap<i32, i64>) -> Option<i32> {
    if a.is_empty() && b.is_empty() {
        return Some(0);
    }
    let (ka, kb) = (a.keys().next()?, b.keys().next()?);
    let h = kb - ka;
    let moved: BTreeMap<i32, i64> = a.iter().map(|(&d, &v)| (d + h, v)).collect();
    (moved == *b).then_some(h)
}

/// `Some(h)` when Hilbert function and minimal Betti numbers of `m2` equal
/// those of `m1` translated by `h`. A necessary condition for `m2 ≅ m1(-h)`.
pub fn rao_shift_equivalent(m1: &RaoModuleRecord, m2: &RaoModuleRecord) -> Option<i32> {
    let h = table_shift(&m1.table, &m2.table)?;
    if m1.is_zero() {
        return Some(0);
    }
    (m1.betti.translate(h) == m2.betti).then_some(h)
}
