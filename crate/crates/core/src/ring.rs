//! Ring descriptors: the ambient polynomial ring and optional hypersurface modulus.

use std::sync::Arc;

use crate::error::{usage, Error, Result};
use crate::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use crate::monomial::MAX_VARS;
use crate::poly::Polynomial;

/// A standard-graded polynomial ring over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(p: u32, vars: &[&str]) -> Result<Arc<Self>> {
        Self::from_names(p, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_names(p: u32, vars: Vec<String>) -> Result<Arc<Self>> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return usage(format!("between 1 and {MAX_VARS} variables required"));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return usage(format!("duplicate variable {v}"));
            }
        }
        Ok(Arc::new(PolyRing {
            field: PrimeField::new(p)?,
            vars,
        }))
    }

    /// `k[x0, ..., x_{n-1}]` over GF(32003).
    pub fn standard(n: usize) -> Arc<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        Self::from_names(DEFAULT_CHARACTERISTIC, names).expect("valid standard ring")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// A ring together with an optional hypersurface equation and the seed used
/// for every "general" choice made in it.
#[derive(Debug, Clone)]
pub struct RingDescriptor {
    pub ring: Arc<PolyRing>,
    pub modulus: Option<Polynomial>,
    pub seed: u64,
}

impl RingDescriptor {
    pub fn new(ring: Arc<PolyRing>) -> Self {
        RingDescriptor {
            ring,
            modulus: None,
            seed: 0,
        }
    }

    pub fn with_modulus(mut self, f: Polynomial) -> Result<Self> {
        if !Arc::ptr_eq(f.ring(), &self.ring) && **f.ring() != *self.ring {
            return usage("modulus lives in a different ring");
        }
        match f.homogeneous_degree() {
            Some(d) if d >= 2 => {}
            Some(_) => return usage("modulus must have degree at least 2"),
            None => {
                return Err(Error::Usage(
                    "modulus must be nonzero and homogeneous".into(),
                ))
            }
        }
        self.modulus = Some(f);
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn is_hypersurface(&self) -> bool {
        self.modulus.is_some()
    }

    /// Number of variables of the ambient polynomial ring.
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }
}
