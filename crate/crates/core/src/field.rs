//! Prime field arithmetic.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default characteristic used throughout the toolkit.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// The prime field GF(p). Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

/// A residue bundled with nothing else; the modulus lives on the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElement(u32);

impl PrimeFieldElement {
    pub fn residue(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Creates GF(p). The Knörrer constructions need square roots of -1 style
    /// manipulations, so characteristics 2 and 3 are rejected.
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Usage(format!("characteristic {p} is not prime")));
        }
        if p <= 3 {
            return Err(Error::Usage(format!("characteristic {p} must exceed 3")));
        }
        if p >= 1 << 31 {
            return Err(Error::Usage(format!("characteristic {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn element(self, value: i64) -> PrimeFieldElement {
        PrimeFieldElement(self.reduce(value))
    }

    #[inline]
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::Domain("inversion of zero".into()));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Square root, if `a` is a square.
    pub fn sqrt(self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (self.p as u64 - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let p = self.p as u64;
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u32;
        while self.pow(z, (p - 1) / 2) != self.p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Maps a residue to the symmetric range `(-p/2, p/2]` for display.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Single entry point for the three basic field operations.
pub fn field_arith(
    field: PrimeField,
    a: PrimeFieldElement,
    b: PrimeFieldElement,
    op: FieldOp,
) -> Result<PrimeFieldElement> {
    Ok(PrimeFieldElement(match op {
        FieldOp::Add => field.add(a.0, b.0),
        FieldOp::Mul => field.mul(a.0, b.0),
        FieldOp::Inv => field.inv(a.0)?,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(DEFAULT_CHARACTERISTIC).unwrap()
    }

    #[test]
    fn rejects_small_or_composite() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn additive_inverse() {
        let k = f();
        let r = field_arith(k, k.element(1), k.element(-1), FieldOp::Add).unwrap();
        assert_eq!(r.residue(), 0);
    }

    #[test]
    fn inverse_of_two() {
        let k = f();
        let i = field_arith(k, k.element(2), k.element(0), FieldOp::Inv).unwrap();
        assert_eq!(field_arith(k, k.element(2), i, FieldOp::Mul).unwrap().residue(), 1);
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let k = f();
        assert!(matches!(k.inv(0), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt_roundtrip() {
        let k = f();
        for a in 1..200u32 {
            let sq = k.mul(a, a);
            let r = k.sqrt(sq).unwrap();
            assert_eq!(k.mul(r, r), sq);
        }
        // 2 is a non-residue when p = 3 mod 8
        assert_eq!(k.sqrt(2), None);
    }
}
