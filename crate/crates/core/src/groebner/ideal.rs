//! Homogeneous ideals and the ideal calculus: quotient, saturation,
//! intersection and elimination.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{ideal_basis, minimal_generators, syzygies, Column, ModuleGb, ModuleOrder, PairSelection};
use crate::error::{usage, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Whether an ideal is known to be saturated with respect to the irrelevant ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Saturation {
    #[default]
    Unknown,
    Saturated,
    NotSaturated,
}

/// A homogeneous ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone)]
pub struct GradedIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    basis: OnceLock<ModuleGb>,
    saturated: Saturation,
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialEq for GradedIdeal {
    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.groebner_basis() == other.groebner_basis()
    }
}

impl GradedIdeal {
    /// Ideal generated by homogeneous polynomials; zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if **g.ring() != **ring {
                return usage("generator lives in a different ring");
            }
            if !g.is_homogeneous() {
                return usage(format!("generator {g} is not homogeneous"));
            }
        }
        Ok(Self::from_homogeneous(ring, gens))
    }

    pub(crate) fn from_homogeneous(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        GradedIdeal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceLock::new(),
            saturated: Saturation::Unknown,
        }
    }

    /// Parses each string as a generator.
    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::from_homogeneous(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::from_homogeneous(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &Arc<PolyRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        let mut out = Self::from_homogeneous(ring, gens);
        out.saturated = Saturation::NotSaturated;
        out
    }

    /// All monomials of degree `d`.
    pub fn power_of_irrelevant(ring: &Arc<PolyRing>, d: u32) -> Self {
        let gens = crate::monomial::monomials_of_degree(ring.nvars(), d)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, 1, m))
            .collect();
        Self::from_homogeneous(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn saturation_status(&self) -> Saturation {
        self.saturated
    }

    pub fn with_saturation(mut self, s: Saturation) -> Self {
        self.saturated = s;
        self
    }

    fn gb(&self) -> &ModuleGb {
        self.basis.get_or_init(|| {
            let cols: Vec<Column> = self.gens.iter().map(|g| vec![g.clone()]).collect();
            ModuleGb::new(&self.ring, &[0], &cols)
        })
    }

    /// The module Gröbner basis (rank one) backing this ideal.
    pub fn module_basis(&self) -> &ModuleGb {
        self.gb()
    }

    /// The reduced Gröbner basis, ascending in grevlex.
    pub fn groebner_basis(&self) -> Vec<Polynomial> {
        self.gb()
            .columns()
            .into_iter()
            .map(|mut c| c.pop().expect("rank one"))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().leading_terms().into_iter().map(|(m, _)| m).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb().normal_form(std::slice::from_ref(f)).pop().expect("rank one")
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(std::slice::from_ref(f))
    }

    pub fn contains_ideal(&self, other: &GradedIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_whole()
    }

    /// A minimal homogeneous generating set (subset of the generators).
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let cols: Vec<Column> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        minimal_generators(&self.ring, &[0], &cols)
            .into_iter()
            .map(|i| self.gens[i].clone())
            .collect()
    }

    /// The same ideal with a minimal generating set, sorted by degree.
    pub fn minimalized(&self) -> Self {
        let mut gens = self.minimal_generators();
        gens.sort_by_key(|g| g.degree().unwrap_or(0));
        let mut out = Self::from_homogeneous(&self.ring, gens);
        if let Some(b) = self.basis.get() {
            let _ = out.basis.set(b.clone());
        }
        out.saturated = self.saturated;
        out
    }

    pub fn degrees_of_generators(&self) -> Vec<i32> {
        self.gens
            .iter()
            .map(|g| g.degree().unwrap_or(0) as i32)
            .collect()
    }

    pub fn sum(&self, other: &GradedIdeal) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::from_homogeneous(&self.ring, gens)
    }

    pub fn product(&self, other: &GradedIdeal) -> Self {
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Self::from_homogeneous(&self.ring, gens).minimalized()
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Self::from_homogeneous(&self.ring, gens)
    }

    /// Homogeneous elements of degree `d` forming a basis of `I_d` modulo
    /// nothing: the degree-`d` multiples of generators, in echelon form.
    pub fn degree_part(&self, d: u32) -> Vec<Polynomial> {
        let n = self.ring.nvars();
        let mut rows: Vec<Polynomial> = Vec::new();
        for g in &self.gens {
            let e = g.degree().unwrap_or(0);
            if e > d {
                continue;
            }
            for m in crate::monomial::monomials_of_degree(n, d - e) {
                rows.push(g.mul_term(&m, 1));
            }
        }
        crate::linalg::echelon_polynomials(&self.ring, rows)
    }
}

/// `(I : f)`, the first coordinates of the syzygies of `(f, gens of I)`.
pub fn ideal_quotient_by_element(i: &GradedIdeal, f: &Polynomial) -> GradedIdeal {
    let ring = i.ring();
    if f.is_zero() {
        return GradedIdeal::unit(ring);
    }
    let df = f.degree().unwrap_or(0) as i32;
    let mut cols: Vec<Column> = vec![vec![f.clone()]];
    let mut degs = vec![df];
    for g in i.groebner_basis() {
        degs.push(g.degree().unwrap_or(0) as i32);
        cols.push(vec![g]);
    }
    let syz = syzygies(ring, &[0], &cols, &degs);
    let gens: Vec<Polynomial> = syz.into_iter().map(|c| c[0].clone()).collect();
    GradedIdeal::from_homogeneous(ring, gens).minimalized()
}

/// `(I : J)`, the intersection of the quotients by the generators of `J`.
pub fn ideal_quotient(i: &GradedIdeal, j: &GradedIdeal) -> Result<GradedIdeal> {
    if **i.ring() != **j.ring() {
        return usage("ideal quotient of ideals in different rings");
    }
    let ring = i.ring();
    let mut acc: Option<GradedIdeal> = None;
    for g in j.minimal_generators() {
        let q = ideal_quotient_by_element(i, &g);
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| GradedIdeal::unit(ring)))
}

/// `I ∩ J`, from the syzygies of `(f_1, …, f_m, g_1, …, g_n)`.
pub fn intersect(i: &GradedIdeal, j: &GradedIdeal) -> Result<GradedIdeal> {
    if **i.ring() != **j.ring() {
        return usage("intersection of ideals in different rings");
    }
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(GradedIdeal::zero(ring));
    }
    if i.is_unit() {
        return Ok(j.clone());
    }
    if j.is_unit() {
        return Ok(i.clone());
    }
    let fi = i.minimal_generators();
    let gj = j.minimal_generators();
    let mut cols: Vec<Column> = Vec::new();
    let mut degs = Vec::new();
    for f in &fi {
        cols.push(vec![f.clone()]);
        degs.push(f.degree().unwrap_or(0) as i32);
    }
    for g in &gj {
        cols.push(vec![g.neg()]);
        degs.push(g.degree().unwrap_or(0) as i32);
    }
    let syz = syzygies(ring, &[0], &cols, &degs);
    let gens: Vec<Polynomial> = syz
        .into_iter()
        .map(|c| {
            let mut h = Polynomial::zero(ring);
            for (a, f) in c.iter().zip(&fi) {
                h = &h + &(a * f);
            }
            h
        })
        .collect();
    Ok(GradedIdeal::from_homogeneous(ring, gens).minimalized())
}

/// Stable value of `I : J : J : …`; `J` defaults to the irrelevant ideal.
pub fn saturate(i: &GradedIdeal, j: Option<&GradedIdeal>) -> Result<GradedIdeal> {
    let ring = i.ring();
    let irrelevant;
    let j = match j {
        Some(j) => j,
        None => {
            irrelevant = GradedIdeal::irrelevant(ring);
            &irrelevant
        }
    };
    let mut cur = i.clone();
    loop {
        let next = ideal_quotient(&cur, j)?;
        if next == cur {
            let mut out = cur.minimalized();
            out.saturated = Saturation::Saturated;
            return Ok(out);
        }
        cur = next;
    }
}

/// Reduced Gröbner basis of `I ∩ k[remaining variables]`. The input may be
/// inhomogeneous; an elimination order is used internally.
pub fn eliminate(ring: &Arc<PolyRing>, gens: &[Polynomial], vars: &[usize]) -> Vec<Polynomial> {
    let mask = vars.iter().fold(0u32, |m, &v| m | (1 << v));
    let order = ModuleOrder::elimination(mask);
    let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
    let gb = ModuleGb::with_order(ring, order, &cols, PairSelection::Normal);
    let mut out: Vec<Polynomial> = gb
        .columns()
        .into_iter()
        .map(|mut c| c.pop().expect("rank one"))
        .filter(|p| p.terms().iter().all(|(m, _)| m.masked_degree(mask) == 0))
        .collect();
    // present the result in the ordinary grevlex basis
    out = ideal_basis(ring, &out, PairSelection::Normal);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(4)
    }

    fn id(r: &Arc<PolyRing>, g: &[&str]) -> GradedIdeal {
        GradedIdeal::parse(r, g).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let r = ring();
        let skew = id(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
        let q = ideal_quotient(&skew, &id(&r, &["x0", "x1"])).unwrap();
        assert_eq!(q, id(&r, &["x2", "x3"]));
        let q = ideal_quotient(&skew, &GradedIdeal::unit(&r)).unwrap();
        assert_eq!(q, skew);
        let ci = id(&r, &["x0*x2", "x1*x3"]);
        let q = ideal_quotient(&ci, &skew).unwrap();
        assert_eq!(q, id(&r, &["x0*x1", "x0*x2", "x1*x3", "x2*x3"]));
    }

    #[test]
    fn saturation_examples() {
        let r = ring();
        let i = id(&r, &["x0^2", "x0*x1", "x0*x2", "x0*x3"]);
        assert_eq!(saturate(&i, None).unwrap(), id(&r, &["x0"]));
        let skew = id(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
        let s = saturate(&skew, None).unwrap();
        assert_eq!(s, skew);
        assert_eq!(s.saturation_status(), Saturation::Saturated);
    }

    #[test]
    fn intersection_examples() {
        let r = ring();
        let a = intersect(&id(&r, &["x0"]), &id(&r, &["x1"])).unwrap();
        assert_eq!(a, id(&r, &["x0*x1"]));
        let b = intersect(&id(&r, &["x0", "x1"]), &id(&r, &["x2", "x3"])).unwrap();
        assert_eq!(b, id(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]));
        assert_eq!(b.generators().len(), 4);
    }

    #[test]
    fn elimination_example() {
        let r = PolyRing::new(32003, &["t", "x0", "x1", "x2"]).unwrap();
        let gens = vec![
            Polynomial::parse(&r, "x0 - t*x1").unwrap(),
            Polynomial::parse(&r, "x2 - t^2*x1").unwrap(),
        ];
        let e = eliminate(&r, &gens, &[0]);
        let target = Polynomial::parse(&r, "x0^2 - x1*x2").unwrap();
        let ideal = GradedIdeal::new(&r, e).unwrap();
        assert!(ideal.contains(&target));
    }
}
