//! Sparse multivariate polynomials over a prime field, kept in descending
//! graded reverse lexicographic order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{usage, Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::ring::PolyRing;

#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.same_ring(other)
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::monomial(ring, ring.field().reduce(c), Monomial::one())
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, 1, Monomial::var(i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, coeff: u32, m: Monomial) -> Self {
        let c = coeff % ring.field().characteristic();
        Polynomial {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, u32)>) -> Self {
        let k = ring.field();
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % k.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusted constructor: terms must already be sorted, merged and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.cmp_grevlex(&w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// The constant coefficient when the polynomial is a nonzero constant.
    pub fn as_nonzero_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            usage("polynomials from different rings")
        }
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    /// Maximal total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    /// Common degree of all terms when the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| m.cmp_grevlex(&t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        let k = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, k.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let k = self.ring.field();
        let c = c % k.characteristic();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, k.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Self {
        let k = self.ring.field();
        if c % k.characteristic() == 0 {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| (t.mul(m), k.mul(a, c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let k = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_grevlex(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        k.sub(a[i].1, b[j].1)
                    } else {
                        k.add(a[i].1, b[j].1)
                    };
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for &(m, c) in &b[j..] {
            out.push((m, if negate { k.neg(c) } else { c }));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let k = self.ring.field();
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &other.terms {
                prod.push((m1.mul(&m2), k.mul(c1, c2)));
            }
        }
        Ok(Self::from_terms(&self.ring, prod))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.ring);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c).expect("nonzero")),
        }
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        let k = self.ring.field();
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v = k.mul(v, k.pow(x, e as u64));
                }
            }
            acc = k.add(acc, v);
        }
        acc
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images[0].ring.clone();
        let mut acc = Polynomial::zero(&target);
        for &(m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c as i64);
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = &t * img;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Keeps only the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| t.0.degree() == d)
                .copied()
                .collect(),
        }
    }

    /// Parses infix text such as `x0*x2 - 3*x1^2` in the given ring.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Self> {
        crate::parse::parse_polynomial(ring, text).map_err(|(col, msg)| Error::Parse {
            line: 1,
            column: col,
            message: msg,
        })
    }
}

/// Sum or product of two polynomials of the same ring.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.try_add(g),
        PolyOp::Mul => f.try_mul(g),
    }
}

/// A homogeneous form of the given degree with every monomial's coefficient
/// drawn independently and uniformly from the field.
pub fn random_homogeneous<R: Rng + ?Sized>(
    ring: &Arc<PolyRing>,
    degree: u32,
    rng: &mut R,
) -> Polynomial {
    let p = ring.field().characteristic();
    let terms = monomials_of_degree(ring.nvars(), degree)
        .into_iter()
        .map(|m| (m, rng.gen_range(0..p)))
        .filter(|t| t.1 != 0)
        .collect();
    Polynomial::from_sorted_terms(ring, terms)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$call(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$call(&rhs).expect("polynomials from different rings")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let k = self.ring.field();
        for (idx, &(m, c)) in self.terms.iter().enumerate() {
            let s = k.signed(c);
            let (neg, a) = if s < 0 { (true, -s) } else { (false, s) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, name) in self.ring.var_names().iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if a != 1 {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r4() -> Arc<PolyRing> {
        PolyRing::standard(4)
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn cancellation() {
        let r = r4();
        assert_eq!(&p(&r, "x0 + x1") + &p(&r, "-x1"), p(&r, "x0"));
    }

    #[test]
    fn difference_of_squares() {
        let r = r4();
        assert_eq!(
            &p(&r, "x0 + x1") * &p(&r, "x0 - x1"),
            p(&r, "x0^2 - x1^2")
        );
    }

    #[test]
    fn degree_four_product() {
        let r = r4();
        let prod = &p(&r, "x0*x3 - x1*x2") * &p(&r, "x0*x3 + x1*x2");
        assert_eq!(prod, p(&r, "x0^2*x3^2 - x1^2*x2^2"));
        assert_eq!(prod.homogeneous_degree(), Some(4));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = p(&r4(), "x0");
        let b = p(&PolyRing::standard(5), "x0");
        assert!(matches!(
            poly_arith(&a, &b, PolyOp::Add),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn random_forms() {
        let r = r4();
        let mut g1 = ChaCha8Rng::seed_from_u64(42);
        let mut g2 = ChaCha8Rng::seed_from_u64(42);
        let a = random_homogeneous(&r, 3, &mut g1);
        let b = random_homogeneous(&r, 3, &mut g2);
        assert_eq!(a, b);
        assert_eq!(a.homogeneous_degree(), Some(3));
        let lin = random_homogeneous(&r, 1, &mut g1);
        assert!(lin.len() <= 4);
        let c = random_homogeneous(&r, 0, &mut g1);
        assert!(c.is_constant());
    }

    #[test]
    fn display_roundtrip() {
        let r = r4();
        let f = p(&r, "3*x0^2*x1 - x2*x3 + 7");
        assert_eq!(p(&r, &f.to_string()), f);
    }
}
