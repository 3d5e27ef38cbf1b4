//! Dense exponent vectors with cached total degree.

use std::cmp::Ordering;

/// Maximum number of variables. All constructions in this crate live in at
/// most P^5 plus a couple of auxiliary variables.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", &self.exps)
    }
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.degree += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::default();
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.degree += other.degree;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        if self.degree > other.degree {
            return false;
        }
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        m
    }

    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Degree in the variables selected by `mask`.
    pub fn masked_degree(&self, mask: u32) -> u32 {
        (0..MAX_VARS)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.exps[i] as u32)
            .sum()
    }

    /// Graded reverse lexicographic comparison with x0 > x1 > ... .
    #[inline]
    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => self.cmp_revlex_tail(other),
            o => o,
        }
    }

    /// Reverse-lex tie break, only meaningful between equal degrees.
    #[inline]
    pub fn cmp_revlex_tail(&self, other: &Self) -> Ordering {
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }

    /// Substitutes a different exponent at position `i`.
    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut m = *self;
        m.degree = m.degree - m.exps[i] as u32 + e;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }
}

/// All monomials of total degree `d` in `n` variables, in descending grevlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp_grevlex(a));
    out
}

/// Binomial coefficient as i128, zero for out-of-range arguments.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        let x2 = Monomial::var(2);
        assert_eq!(x0.cmp_grevlex(&x1), Ordering::Greater);
        // x1^2 > x0 x2 in grevlex
        assert_eq!(x1.mul(&x1).cmp_grevlex(&x0.mul(&x2)), Ordering::Greater);
        assert_eq!(x0.cmp_grevlex(&x0.mul(&x0)), Ordering::Less);
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials_of_degree(4, 1).len(), 4);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn division() {
        let a = Monomial::from_exponents(&[2, 1, 0]);
        let b = Monomial::from_exponents(&[1, 1, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.checked_div(&b), Some(Monomial::var(0)));
        assert_eq!(b.checked_div(&a), None);
    }
}
