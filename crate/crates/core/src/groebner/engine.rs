//! Buchberger's algorithm on vectors of polynomials.
//!
//! Ideals are the rank-one case. A vector is a list of `(monomial, component,
//! coefficient)` terms sorted descending in a [`ModuleOrder`]: optional
//! component blocks first (higher block dominates), then shifted total degree,
//! then reverse lexicographic order on monomials, then position.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::field::PrimeField;
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MTerm {
    pub m: Monomial,
    pub comp: u32,
    pub c: u32,
}

pub type Vector = Vec<MTerm>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoOrder {
    GrevLex,
    /// Degree in the masked variables first, then grevlex. Eliminates them.
    Elimination { mask: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonoOrder,
    pub shifts: Vec<i32>,
    pub blocks: Vec<u8>,
}

/// S-pair selection strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairSelection {
    /// Smallest sugar degree first, ties by the lcm in the term order.
    #[default]
    Normal,
    /// First created, first reduced.
    Fifo,
}

impl ModuleOrder {
    pub fn ideal() -> Self {
        ModuleOrder {
            mono: MonoOrder::GrevLex,
            shifts: vec![0],
            blocks: vec![0],
        }
    }

    pub fn elimination(mask: u32) -> Self {
        ModuleOrder {
            mono: MonoOrder::Elimination { mask },
            shifts: vec![0],
            blocks: vec![0],
        }
    }

    /// Term-over-position order where component `i` carries degree `shifts[i]`.
    pub fn top(shifts: Vec<i32>) -> Self {
        let n = shifts.len();
        ModuleOrder {
            mono: MonoOrder::GrevLex,
            shifts,
            blocks: vec![0; n],
        }
    }

    pub fn ncomps(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn term_degree(&self, t: &MTerm) -> i64 {
        t.m.degree() as i64 + self.shifts[t.comp as usize] as i64
    }

    #[inline]
    pub fn cmp(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.cmp_mc(&a.m, a.comp, &b.m, b.comp)
    }

    #[inline]
    pub fn cmp_mc(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        let (ac, bc) = (ac as usize, bc as usize);
        self.blocks[ac]
            .cmp(&self.blocks[bc])
            .then_with(|| match self.mono {
                MonoOrder::GrevLex => Ordering::Equal,
                MonoOrder::Elimination { mask } => {
                    am.masked_degree(mask).cmp(&bm.masked_degree(mask))
                }
            })
            .then_with(|| {
                (am.degree() as i64 + self.shifts[ac] as i64)
                    .cmp(&(bm.degree() as i64 + self.shifts[bc] as i64))
            })
            .then_with(|| am.cmp_revlex_tail(bm))
            .then_with(|| bc.cmp(&ac))
    }

    /// Sorts and merges raw terms into a normalized vector.
    pub fn normalize(&self, k: PrimeField, mut terms: Vec<MTerm>) -> Vector {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vector = Vec::with_capacity(terms.len());
        for t in terms {
            let c = t.c % k.characteristic();
            match out.last_mut() {
                Some(last) if last.m == t.m && last.comp == t.comp => {
                    last.c = k.add(last.c, c)
                }
                _ => out.push(MTerm { c, ..t }),
            }
        }
        out.retain(|t| t.c != 0);
        out
    }

    /// Highest shifted degree of a term; used as the sugar of generators.
    pub fn sugar(&self, v: &[MTerm]) -> i64 {
        v.iter().map(|t| self.term_degree(t)).max().unwrap_or(0)
    }
}

/// `a - c * m * b`, where every term of `m * b` is at most the first term of `a`.
fn sub_mul(order: &ModuleOrder, k: PrimeField, a: &[MTerm], c: u32, m: &Monomial, b: &[MTerm]) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let negc = k.neg(c);
    while i < a.len() && j < b.len() {
        let bm = b[j].m.mul(m);
        match order.cmp_mc(&a[i].m, a[i].comp, &bm, b[j].comp) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(MTerm {
                    m: bm,
                    comp: b[j].comp,
                    c: k.mul(negc, b[j].c),
                });
                j += 1;
            }
            Ordering::Equal => {
                let v = k.add(a[i].c, k.mul(negc, b[j].c));
                if v != 0 {
                    out.push(MTerm { c: v, ..a[i] });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(MTerm {
            m: t.m.mul(m),
            comp: t.comp,
            c: k.mul(negc, t.c),
        });
    }
    out
}

pub fn make_monic(k: PrimeField, v: &mut [MTerm]) {
    if let Some(first) = v.first() {
        if first.c != 1 {
            let inv = k.inv(first.c).expect("nonzero leading coefficient");
            for t in v.iter_mut() {
                t.c = k.mul(t.c, inv);
            }
        }
    }
}

fn find_reducer(basis: &[Elem], t: &MTerm) -> Option<usize> {
    basis
        .iter()
        .position(|e| e.active && e.comp == t.comp && e.lm.divides(&t.m))
}

/// Reduces `v` against monic `basis` vectors (all with leading term first).
/// With `full`, every term is reduced; otherwise only the head.
fn reduce_against(order: &ModuleOrder, k: PrimeField, mut v: Vector, basis: &[Elem], full: bool) -> Vector {
    let mut pos = 0;
    while pos < v.len() {
        let t = v[pos];
        match find_reducer(basis, &t) {
            Some(i) => {
                let g = &basis[i];
                let q = g.lm.quotient_of(&t.m);
                let tail = sub_mul(order, k, &v[pos..], t.c, &q, &g.v);
                v.truncate(pos);
                v.extend(tail);
            }
            None => {
                if !full {
                    return v;
                }
                pos += 1;
            }
        }
    }
    v
}

#[derive(Clone, Debug)]
struct Elem {
    v: Vector,
    lm: Monomial,
    comp: u32,
    sugar: i64,
    active: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

/// Incremental Buchberger completion with the product and chain criteria.
pub struct Buchberger {
    order: ModuleOrder,
    k: PrimeField,
    basis: Vec<Elem>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
    selection: PairSelection,
    stats: GbStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub product_criterion: usize,
    pub chain_criterion: usize,
}

impl Buchberger {
    pub fn new(order: ModuleOrder, k: PrimeField, selection: PairSelection) -> Self {
        Buchberger {
            order,
            k,
            basis: Vec::new(),
            pairs: Vec::new(),
            pending: HashSet::new(),
            selection,
            stats: GbStats::default(),
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    /// Normal form with respect to the current basis.
    pub fn reduce(&self, v: Vector, full: bool) -> Vector {
        reduce_against(&self.order, self.k, v, &self.basis, full)
    }

    /// Reduces `v` and, if it does not vanish, adds it to the basis.
    /// Returns whether the element was new.
    pub fn add(&mut self, v: Vector) -> bool {
        let sugar = self.order.sugar(&v);
        let mut r = self.reduce(v, true);
        if r.is_empty() {
            return false;
        }
        make_monic(self.k, &mut r);
        self.insert(r, sugar);
        true
    }

    fn insert(&mut self, v: Vector, sugar: i64) {
        let lt = v[0];
        let n = self.basis.len();
        let single = self.order.ncomps() == 1;
        for (i, e) in self.basis.iter().enumerate() {
            if e.comp != lt.comp {
                continue;
            }
            if single && e.lm.is_coprime(&lt.m) {
                self.stats.product_criterion += 1;
                continue;
            }
            let lcm = e.lm.lcm(&lt.m);
            let s = (sugar + (lcm.degree() - lt.m.degree()) as i64)
                .max(e.sugar + (lcm.degree() - e.lm.degree()) as i64);
            self.pairs.push(Pair {
                i,
                j: n,
                lcm,
                comp: lt.comp,
                sugar: s,
            });
            self.pending.insert((i, n));
        }
        self.basis.push(Elem {
            lm: lt.m,
            comp: lt.comp,
            sugar,
            v,
            active: true,
        });
    }

    fn select(&self, bound: Option<i64>) -> Option<usize> {
        if self.pairs.is_empty() {
            return None;
        }
        let idx = match self.selection {
            PairSelection::Fifo => 0,
            PairSelection::Normal => {
                let mut best = 0;
                for (i, p) in self.pairs.iter().enumerate().skip(1) {
                    let b = &self.pairs[best];
                    let o = p.sugar.cmp(&b.sugar).then_with(|| {
                        self.order.cmp_mc(&p.lcm, p.comp, &b.lcm, b.comp)
                    });
                    if o == Ordering::Less {
                        best = i;
                    }
                }
                best
            }
        };
        match bound {
            Some(d) if self.pairs[idx].sugar > d => {
                // Fifo does not respect degrees; look for any admissible pair.
                self.pairs.iter().position(|p| p.sugar <= d)
            }
            _ => Some(idx),
        }
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        self.basis.iter().enumerate().any(|(k, e)| {
            k != p.i
                && k != p.j
                && e.comp == p.comp
                && e.lm.divides(&p.lcm)
                && !self.pending.contains(&(p.i.min(k), p.i.max(k)))
                && !self.pending.contains(&(p.j.min(k), p.j.max(k)))
        })
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let qa = a.lm.quotient_of(&p.lcm);
        let qb = b.lm.quotient_of(&p.lcm);
        let k = self.k;
        let mut av: Vector = a
            .v
            .iter()
            .map(|t| MTerm {
                m: t.m.mul(&qa),
                ..*t
            })
            .collect();
        // both monic: subtract qb * b
        av = sub_mul(&self.order, k, &av, 1, &qb, &b.v);
        av
    }

    /// Processes pairs until none remain (or none of sugar at most `bound`).
    pub fn complete(&mut self, bound: Option<i64>) {
        while let Some(idx) = self.select(bound) {
            let p = self.pairs.remove(idx);
            if self.chain_criterion(&p) {
                self.pending.remove(&(p.i, p.j));
                self.stats.chain_criterion += 1;
                continue;
            }
            self.pending.remove(&(p.i, p.j));
            self.stats.pairs_reduced += 1;
            let s = self.spoly(&p);
            let r = self.reduce(s, true);
            if r.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let mut r = r;
            make_monic(self.k, &mut r);
            self.insert(r, p.sugar);
        }
    }

    /// Leading terms currently in the basis (not necessarily minimal).
    pub fn leading_terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        self.basis.iter().map(|e| (e.lm, e.comp))
    }

    /// The reduced Gröbner basis, sorted ascending by leading term.
    pub fn into_reduced(self) -> Vec<Vector> {
        let order = self.order;
        let k = self.k;
        let mut elems = self.basis;
        // drop elements whose leading term is divisible by another's
        let n = elems.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let (a, b) = (&elems[i], &elems[j]);
                if a.comp == b.comp && b.lm.divides(&a.lm) && (b.lm != a.lm || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut minimal: Vec<Elem> = elems
            .drain(..)
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect();
        minimal.sort_by(|a, b| order.cmp_mc(&a.lm, a.comp, &b.lm, b.comp));
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let v = std::mem::take(&mut minimal[i].v);
            let head = v[0];
            let tail = reduce_against(&order, k, v[1..].to_vec(), &minimal, true);
            let mut r = Vec::with_capacity(tail.len() + 1);
            r.push(head);
            r.extend(tail);
            minimal[i].v = r.clone();
            out.push(r);
        }
        out
    }
}

/// Reduced Gröbner basis of the module generated by `gens`.
pub fn groebner_basis(
    order: &ModuleOrder,
    k: PrimeField,
    gens: Vec<Vector>,
    selection: PairSelection,
) -> Vec<Vector> {
    let mut gens: Vec<Vector> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    gens.sort_by(|a, b| order.cmp(&a[0], &b[0]));
    let mut bb = Buchberger::new(order.clone(), k, selection);
    for g in gens {
        bb.add(g);
    }
    bb.complete(None);
    bb.into_reduced()
}

/// Normal form of `v` modulo a (reduced, monic) Gröbner basis.
pub fn normal_form(order: &ModuleOrder, k: PrimeField, v: Vector, basis: &[Vector]) -> Vector {
    let elems: Vec<Elem> = basis
        .iter()
        .map(|b| Elem {
            lm: b[0].m,
            comp: b[0].comp,
            sugar: 0,
            v: b.clone(),
            active: true,
        })
        .collect();
    let mut v = v;
    // the basis vectors are assumed monic
    debug_assert!(basis.iter().all(|b| b[0].c == 1));
    v = reduce_against(order, k, v, &elems, true);
    v
}

/// S-vector of two monic basis elements with matching leading components.
pub fn s_vector(order: &ModuleOrder, k: PrimeField, a: &[MTerm], b: &[MTerm]) -> Option<Vector> {
    if a[0].comp != b[0].comp {
        return None;
    }
    let lcm = a[0].m.lcm(&b[0].m);
    let qa = a[0].m.quotient_of(&lcm);
    let qb = b[0].m.quotient_of(&lcm);
    let ca = k.inv(a[0].c).ok()?;
    let cb = k.inv(b[0].c).ok()?;
    let av: Vector = a
        .iter()
        .map(|t| MTerm {
            m: t.m.mul(&qa),
            comp: t.comp,
            c: k.mul(t.c, ca),
        })
        .collect();
    Some(sub_mul(order, k, &av, cb, &qb, b))
}
