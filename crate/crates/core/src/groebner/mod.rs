//! Gröbner bases of ideals and of submodules of graded free modules.
//!
//! Columns of polynomials (`Vec<Polynomial>`) are the interchange format with
//! the rest of the crate; internally they are converted to term vectors
//! ordered by a [`ModuleOrder`] whose shifts are the generator degrees of the
//! ambient free module.

mod engine;
pub mod ideal;

use std::sync::Arc;

pub use engine::{
    groebner_basis, normal_form, s_vector, Buchberger, GbStats, MTerm, ModuleOrder, MonoOrder,
    PairSelection, Vector,
};
pub use ideal::{
    eliminate, ideal_quotient, ideal_quotient_by_element, intersect, saturate, GradedIdeal,
    Saturation,
};

/// The order used by every basis computation: graded reverse lexicographic on
/// monomials, refined on free modules by term-over-position with generator
/// degrees, or an elimination order.
pub type MonomialOrderSpec = ModuleOrder;

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// A column vector of polynomials, an element of a free module.
pub type Column = Vec<Polynomial>;

pub fn column_to_vector(order: &ModuleOrder, k: PrimeField, col: &[Polynomial]) -> Vector {
    let terms: Vec<MTerm> = col
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.terms().iter().map(move |&(m, c)| MTerm {
                m,
                comp: i as u32,
                c,
            })
        })
        .collect();
    order.normalize(k, terms)
}

/// Splits a vector back into `rank` polynomial coordinates, starting at
/// component `offset`. Terms outside the range are ignored.
pub fn vector_to_column(ring: &Arc<PolyRing>, v: &[MTerm], offset: usize, rank: usize) -> Column {
    let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
    for t in v {
        let c = t.comp as usize;
        if c >= offset && c < offset + rank {
            parts[c - offset].push((t.m, t.c));
        }
    }
    parts
        .into_iter()
        .map(|terms| Polynomial::from_terms(ring, terms))
        .collect()
}

/// Degree of a homogeneous column in a free module with the given generator
/// degrees; `None` for the zero column or an inhomogeneous one.
pub fn column_degree(degrees: &[i32], col: &[Polynomial]) -> Option<i32> {
    let mut out: Option<i32> = None;
    for (p, &d) in col.iter().zip(degrees) {
        for &(m, _) in p.terms() {
            let e = m.degree() as i32 + d;
            match out {
                None => out = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
    }
    out
}

pub fn is_zero_column(col: &[Polynomial]) -> bool {
    col.iter().all(|p| p.is_zero())
}

/// Reduced Gröbner basis of a submodule of a graded free module.
#[derive(Clone, Debug)]
pub struct ModuleGb {
    ring: Arc<PolyRing>,
    order: ModuleOrder,
    basis: Vec<Vector>,
}

impl ModuleGb {
    /// Basis of the submodule of `⊕ P(-degrees[i])` generated by `cols`.
    pub fn new(ring: &Arc<PolyRing>, degrees: &[i32], cols: &[Column]) -> Self {
        Self::with_selection(ring, degrees, cols, PairSelection::Normal)
    }

    pub fn with_selection(
        ring: &Arc<PolyRing>,
        degrees: &[i32],
        cols: &[Column],
        selection: PairSelection,
    ) -> Self {
        let order = ModuleOrder::top(degrees.to_vec());
        Self::with_order(ring, order, cols, selection)
    }

    pub fn with_order(
        ring: &Arc<PolyRing>,
        order: ModuleOrder,
        cols: &[Column],
        selection: PairSelection,
    ) -> Self {
        let k = ring.field();
        let gens = cols
            .iter()
            .map(|c| column_to_vector(&order, k, c))
            .collect();
        let basis = groebner_basis(&order, k, gens, selection);
        ModuleGb {
            ring: ring.clone(),
            order,
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.order.ncomps()
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn columns(&self) -> Vec<Column> {
        self.basis
            .iter()
            .map(|v| vector_to_column(&self.ring, v, 0, self.rank()))
            .collect()
    }

    pub fn normal_form_vector(&self, v: Vector) -> Vector {
        normal_form(&self.order, self.ring.field(), v, &self.basis)
    }

    pub fn normal_form(&self, col: &[Polynomial]) -> Column {
        let v = column_to_vector(&self.order, self.ring.field(), col);
        let r = self.normal_form_vector(v);
        vector_to_column(&self.ring, &r, 0, self.rank())
    }

    pub fn contains(&self, col: &[Polynomial]) -> bool {
        let v = column_to_vector(&self.order, self.ring.field(), col);
        self.normal_form_vector(v).is_empty()
    }

    /// Leading monomials with their components.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.basis
            .iter()
            .map(|v| (v[0].m, v[0].comp as usize))
            .collect()
    }

    /// Whether the submodule is everything (contains each basis vector).
    pub fn is_whole(&self) -> bool {
        (0..self.rank()).all(|i| {
            self.basis
                .iter()
                .any(|v| v[0].comp as usize == i && v[0].m.is_one())
        })
    }

    /// Whether every S-vector of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let k = self.ring.field();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                if let Some(s) = s_vector(&self.order, k, &self.basis[i], &self.basis[j]) {
                    if !self.normal_form_vector(s).is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether no term of a basis element is divisible by another leading term.
    pub fn is_reduced(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, v)| {
            v[0].c == 1
                && self.basis.iter().enumerate().all(|(j, w)| {
                    v.iter().enumerate().all(|(pos, t)| {
                        (i == j && pos == 0) || !(w[0].comp == t.comp && w[0].m.divides(&t.m))
                    })
                })
        })
    }
}

/// Syzygy generators of homogeneous columns.
///
/// `tgt_degrees` are the generator degrees of the ambient free module and
/// `src_degrees[j]` the degree assigned to column `j` (needed for zero
/// columns). The result lives in `⊕ P(-src_degrees[j])` and generates the
/// full syzygy module; it is a Gröbner basis for the induced term-over-position
/// order but not necessarily minimal.
pub fn syzygies(
    ring: &Arc<PolyRing>,
    tgt_degrees: &[i32],
    cols: &[Column],
    src_degrees: &[i32],
) -> Vec<Column> {
    let tracked = TrackedGb::new(ring, tgt_degrees, cols, src_degrees);
    tracked.syzygies()
}

/// A Gröbner basis of `(g_j | e_j)` used to express membership with
/// explicit coefficients.
pub struct TrackedGb {
    ring: Arc<PolyRing>,
    rank: usize,
    ngens: usize,
    order: ModuleOrder,
    basis: Vec<Vector>,
}

impl TrackedGb {
    pub fn new(
        ring: &Arc<PolyRing>,
        tgt_degrees: &[i32],
        cols: &[Column],
        src_degrees: &[i32],
    ) -> Self {
        assert_eq!(cols.len(), src_degrees.len(), "one degree per column");
        let rank = tgt_degrees.len();
        let n = cols.len();
        let k = ring.field();
        let mut shifts = tgt_degrees.to_vec();
        shifts.extend_from_slice(src_degrees);
        let mut blocks = vec![1u8; rank];
        blocks.extend(std::iter::repeat(0u8).take(n));
        let order = ModuleOrder {
            mono: MonoOrder::GrevLex,
            shifts,
            blocks,
        };
        let gens: Vec<Vector> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut terms: Vec<MTerm> = column_to_vector(&order, k, c);
                terms.push(MTerm {
                    m: Monomial::one(),
                    comp: (rank + j) as u32,
                    c: 1,
                });
                order.normalize(k, terms)
            })
            .collect();
        let basis = groebner_basis(&order, k, gens, PairSelection::Normal);
        TrackedGb {
            ring: ring.clone(),
            rank,
            ngens: n,
            order,
            basis,
        }
    }

    pub fn syzygies(&self) -> Vec<Column> {
        self.basis
            .iter()
            .filter(|v| v[0].comp as usize >= self.rank)
            .map(|v| vector_to_column(&self.ring, v, self.rank, self.ngens))
            .collect()
    }

    /// Coefficients `a` with `Σ a_j g_j = target`, if the target lies in the
    /// submodule.
    pub fn lift(&self, target: &[Polynomial]) -> Option<Column> {
        let k = self.ring.field();
        let v = column_to_vector(&self.order, k, target);
        let r = normal_form(&self.order, k, v, &self.basis);
        if r.iter().any(|t| (t.comp as usize) < self.rank) {
            return None;
        }
        let w = vector_to_column(&self.ring, &r, self.rank, self.ngens);
        Some(w.iter().map(|p| p.neg()).collect())
    }
}

/// Solves `Σ a_j cols_j = target` for each target.
pub fn lift(
    ring: &Arc<PolyRing>,
    tgt_degrees: &[i32],
    cols: &[Column],
    src_degrees: &[i32],
    targets: &[Column],
) -> Vec<Option<Column>> {
    let t = TrackedGb::new(ring, tgt_degrees, cols, src_degrees);
    targets.iter().map(|c| t.lift(c)).collect()
}

/// Indices of a minimal generating subset of homogeneous columns, chosen
/// greedily in order of increasing degree (ties keep input order).
pub fn minimal_generators(ring: &Arc<PolyRing>, degrees: &[i32], cols: &[Column]) -> Vec<usize> {
    let order = ModuleOrder::top(degrees.to_vec());
    let k = ring.field();
    let mut items: Vec<(usize, Vector, i64)> = cols
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            let v = column_to_vector(&order, k, c);
            if v.is_empty() {
                None
            } else {
                let d = order.sugar(&v);
                Some((i, v, d))
            }
        })
        .collect();
    items.sort_by_key(|(i, _, d)| (*d, *i));
    let mut bb = Buchberger::new(order, k, PairSelection::Normal);
    let mut keep = Vec::new();
    for (i, v, d) in items {
        bb.complete(Some(d));
        if bb.add(v) {
            keep.push(i);
        }
    }
    keep
}

/// Reduced Gröbner basis of an ideal as polynomials, ascending.
pub fn ideal_basis(ring: &Arc<PolyRing>, gens: &[Polynomial], selection: PairSelection) -> Vec<Polynomial> {
    let cols: Vec<Column> = gens.iter().map(|g| vec![g.clone()]).collect();
    ModuleGb::with_selection(ring, &[0], &cols, selection)
        .columns()
        .into_iter()
        .map(|mut c| c.pop().expect("rank one"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn twisted_cubic_basis_is_generators() {
        let r = PolyRing::standard(4);
        let gens = vec![
            p(&r, "x0*x2 - x1^2"),
            p(&r, "x1*x3 - x2^2"),
            p(&r, "x0*x3 - x1*x2"),
        ];
        let gb = ideal_basis(&r, &gens, PairSelection::Normal);
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(gb.contains(&g.monic()) || gb.contains(&g.neg().monic()));
        }
    }

    #[test]
    fn squares_example() {
        let r = PolyRing::standard(4);
        let gb = ideal_basis(&r, &[p(&r, "x0^2 - x1^2"), p(&r, "x0^2")], PairSelection::Fifo);
        assert_eq!(gb, vec![p(&r, "x1^2"), p(&r, "x0^2")]);
    }

    #[test]
    fn normal_form_of_square() {
        let r = PolyRing::standard(4);
        let gens: Vec<Column> = ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]
            .iter()
            .map(|s| vec![p(&r, s)])
            .collect();
        let gb = ModuleGb::new(&r, &[0], &gens);
        assert_eq!(gb.normal_form(&[p(&r, "x1^2")]), vec![p(&r, "x0*x2")]);
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.is_reduced());
    }

    #[test]
    fn koszul_syzygy() {
        let r = PolyRing::standard(4);
        let cols = vec![vec![p(&r, "x0")], vec![p(&r, "x1")]];
        let s = syzygies(&r, &[0], &cols, &[1, 1]);
        assert_eq!(s.len(), 1);
        let c = &s[0];
        assert!(c == &vec![p(&r, "x1"), p(&r, "-x0")] || c == &vec![p(&r, "-x1"), p(&r, "x0")]);
    }

    #[test]
    fn lift_and_minimal_generators() {
        let r = PolyRing::standard(4);
        let cols = vec![vec![p(&r, "x0")], vec![p(&r, "x1")], vec![p(&r, "x0*x2 + x1*x3")]];
        assert_eq!(minimal_generators(&r, &[0], &cols), vec![0, 1]);
        let l = lift(&r, &[0], &cols[..2], &[1, 1], &[vec![p(&r, "x0*x3 - x1^2")]]);
        let a = l[0].clone().unwrap();
        assert_eq!(&a[0] * &p(&r, "x0") + &a[1] * &p(&r, "x1"), p(&r, "x0*x3 - x1^2"));
        let l = lift(&r, &[0], &cols[..2], &[1, 1], &[vec![p(&r, "x2")]]);
        assert!(l[0].is_none());
    }
}
