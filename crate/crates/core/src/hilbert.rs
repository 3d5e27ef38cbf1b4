//! Hilbert series of graded quotients of free modules, computed from
//! leading-term monomial ideals by pivot recursion.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::groebner::{GradedIdeal, ModuleGb};
use crate::monomial::{binomial, Monomial, MAX_VARS};

/// `HS(t) = t^offset · N(t) / (1 - t)^nvars` with integer numerator `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub offset: i32,
    pub numerator: Vec<i64>,
}

fn poly_add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += sign * c;
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Removes generators divisible by others.
pub fn minimize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `K(t)` of `HS(S/I) = K(t)/(1-t)^n` for a monomial ideal `I`.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimize_monomials(gens.to_vec());
    numerator_rec(gens)
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![];
    }
    // base case: pairwise coprime generators
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exponent(i) > 0 {
                *c += 1;
            }
        }
    }
    let (best, &cnt) = counts
        .iter()
        .enumerate()
        .max_by_key(|(i, c)| (**c, std::cmp::Reverse(*i)))
        .expect("nonempty");
    if cnt <= 1 {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut next = acc.clone();
            poly_add_shifted(&mut next, &acc, g.degree() as usize, -1);
            acc = next;
        }
        return trim(acc);
    }
    // pivot on a power of the most frequent variable
    // a generator containing the variable that is not a pure power of it
    // exists, and its exponent yields a pivot outside the ideal
    let e = gens
        .iter()
        .filter(|g| g.exponent(best) > 0 && g.exponent(best) < g.degree())
        .map(|g| g.exponent(best))
        .min()
        .expect("mixed generator");
    let pivot = Monomial::var(best).with_exponent(best, e);
    let mut plus = gens.clone();
    plus.push(pivot);
    let plus = minimize_monomials(plus);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let r = g.exponent(best).saturating_sub(e);
            g.with_exponent(best, r)
        })
        .collect();
    let colon = minimize_monomials(colon);
    let mut acc = numerator_rec(plus);
    let c = numerator_rec(colon);
    poly_add_shifted(&mut acc, &c, e as usize, 1);
    trim(acc)
}

impl HilbertSeries {
    /// Series of `⊕ S(-degrees[c]) / M` where the leading terms of `M` are given.
    pub fn from_leading_terms(nvars: usize, degrees: &[i32], lead: &[(Monomial, usize)]) -> Self {
        let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); degrees.len()];
        for &(m, c) in lead {
            per_comp[c].push(m);
        }
        let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
        for (c, gens) in per_comp.into_iter().enumerate() {
            let k = monomial_numerator(&gens);
            for (i, v) in k.into_iter().enumerate() {
                *terms.entry(i as i64 + degrees[c] as i64).or_default() += v;
            }
        }
        Self::from_map(nvars, terms)
    }

    fn from_map(nvars: usize, terms: BTreeMap<i64, i64>) -> Self {
        let nz: Vec<(i64, i64)> = terms.into_iter().filter(|(_, v)| *v != 0).collect();
        if nz.is_empty() {
            return HilbertSeries {
                nvars,
                offset: 0,
                numerator: vec![],
            };
        }
        let lo = nz[0].0;
        let hi = nz[nz.len() - 1].0;
        let mut numerator = vec![0i64; (hi - lo + 1) as usize];
        for (e, v) in nz {
            numerator[(e - lo) as usize] = v;
        }
        HilbertSeries {
            nvars,
            offset: lo as i32,
            numerator,
        }
    }

    pub fn of_ideal_quotient(i: &GradedIdeal) -> Self {
        let n = i.ring().nvars();
        let lead: Vec<(Monomial, usize)> = i.leading_monomials().into_iter().map(|m| (m, 0)).collect();
        Self::from_leading_terms(n, &[0], &lead)
    }

    /// Series of the cokernel of a submodule given by its Gröbner basis.
    pub fn of_module_quotient(nvars: usize, degrees: &[i32], gb: &ModuleGb) -> Self {
        Self::from_leading_terms(nvars, degrees, &gb.leading_terms())
    }

    /// Series of a free module `⊕ S(-degrees[i])`.
    pub fn of_free(nvars: usize, degrees: &[i32]) -> Self {
        Self::from_leading_terms(nvars, degrees, &[])
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator coefficients as (exponent, coefficient) pairs.
    pub fn numerator_terms(&self) -> Vec<(i32, i64)> {
        self.numerator
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.offset + i as i32, c))
            .collect()
    }

    pub fn hilbert_function(&self, n: i32) -> i64 {
        let v = self.nvars as i64;
        let mut s: i128 = 0;
        for (k, c) in self.numerator_terms() {
            let m = (n - k) as i64;
            if m < 0 {
                continue;
            }
            let b = if v == 0 {
                i128::from(m == 0)
            } else {
                binomial(m + v - 1, v - 1)
            };
            s += c as i128 * b;
        }
        s as i64
    }

    /// Numerator after cancelling all factors `1 - t`, with the remaining
    /// pole order (the Krull dimension).
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut p = self.numerator.clone();
        let mut dim = self.nvars;
        while dim > 0 && !p.is_empty() && p.iter().sum::<i64>() == 0 {
            // divide by (1 - t): q_i = sum_{j <= i} p_j
            let mut q = Vec::with_capacity(p.len() - 1);
            let mut acc = 0;
            for &c in &p[..p.len() - 1] {
                acc += c;
                q.push(acc);
            }
            p = trim(q);
            dim -= 1;
        }
        (p, dim)
    }

    /// Krull dimension of the module (0 for the zero module).
    pub fn dimension(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.reduced().1
    }

    /// Multiplicity: the reduced numerator evaluated at 1.
    pub fn degree(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Hilbert function values on `[lo, hi]`.
    pub fn table(&self, lo: i32, hi: i32) -> Vec<(i32, i64)> {
        (lo..=hi).map(|n| (n, self.hilbert_function(n))).collect()
    }

    /// Nonzero Hilbert function values of a finite-length module.
    pub fn finite_table(&self) -> Option<BTreeMap<i32, i64>> {
        let (p, dim) = self.reduced();
        if dim != 0 {
            return None;
        }
        Some(
            p.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.offset + i as i32, c))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.nvars, other.nvars, "series over different rings");
        let mut m: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in self.numerator_terms() {
            *m.entry(e as i64).or_default() += c;
        }
        for (e, c) in other.numerator_terms() {
            *m.entry(e as i64).or_default() += sign * c;
        }
        Self::from_map(self.nvars, m)
    }

    /// The series of the shifted module `M(s)`.
    pub fn twist(&self, s: i32) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.offset -= s;
        }
        out
    }
}

/// Hilbert series of `S/I`.
pub fn hilbert_series(i: &GradedIdeal) -> HilbertSeries {
    HilbertSeries::of_ideal_quotient(i)
}

/// `dim_k (S/I)_n`.
pub fn hilbert_function(i: &GradedIdeal, n: i32) -> i64 {
    hilbert_series(i).hilbert_function(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    #[test]
    fn zero_ideal() {
        let r = PolyRing::standard(4);
        let h = hilbert_series(&GradedIdeal::zero(&r));
        for n in 0..8 {
            assert_eq!(h.hilbert_function(n), binomial(n as i64 + 3, 3) as i64);
        }
        assert_eq!(h.dimension(), 4);
        assert_eq!(h.degree(), 1);
    }

    #[test]
    fn twisted_cubic() {
        let r = PolyRing::standard(4);
        let i = GradedIdeal::parse(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]).unwrap();
        let h = hilbert_series(&i);
        for n in 1..10 {
            assert_eq!(h.hilbert_function(n), 3 * n as i64 + 1);
        }
        assert_eq!(h.dimension(), 2);
        assert_eq!(h.degree(), 3);
    }

    #[test]
    fn irrelevant() {
        let r = PolyRing::standard(4);
        let h = hilbert_series(&GradedIdeal::irrelevant(&r));
        assert_eq!(h.finite_table().unwrap(), BTreeMap::from([(0, 1)]));
        assert_eq!(h.degree(), 1);
    }
}
