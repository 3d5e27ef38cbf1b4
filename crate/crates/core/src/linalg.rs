//! Dense linear algebra over a prime field: row echelon forms, ranks,
//! nullspaces and affine solutions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(k: PrimeField, rows: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if y != 0 {
                        *x = k.sub(*x, k.mul(f, y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(k: PrimeField, rows: &[Vec<u32>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(k, &mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace(k: PrimeField, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(k, &mut m, ncols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0u32; ncols];
        x[free] = 1;
        for (row, &p) in m.iter().zip(&pivots) {
            x[p] = k.neg(row[free]);
        }
        out.push(x);
    }
    out
}

/// Some `x` with `A x = b`, or `None`.
pub fn solve(k: PrimeField, rows: &[Vec<u32>], ncols: usize, b: &[u32]) -> Option<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = row_reduce(k, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols];
    }
    Some(x)
}

/// Indexes monomials (with components) appearing in a collection of
/// vectors so they can be treated as coordinate vectors.
#[derive(Default, Debug, Clone)]
pub struct MonomialIndex {
    index: HashMap<(Monomial, usize), usize>,
    keys: Vec<(Monomial, usize)>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_insert(&mut self, m: Monomial, comp: usize) -> usize {
        if let Some(&i) = self.index.get(&(m, comp)) {
            return i;
        }
        let i = self.keys.len();
        self.index.insert((m, comp), i);
        self.keys.push((m, comp));
        i
    }

    pub fn get(&self, m: Monomial, comp: usize) -> Option<usize> {
        self.index.get(&(m, comp)).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> (Monomial, usize) {
        self.keys[i]
    }
}

/// Coordinate vectors for columns of polynomials.
pub fn columns_to_coordinates(cols: &[Vec<Polynomial>], index: &mut MonomialIndex) -> Vec<Vec<(usize, u32)>> {
    cols.iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .flat_map(|(i, p)| p.terms().iter().map(move |&(m, v)| (m, i, v)))
                .map(|(m, i, v)| (index.get_or_insert(m, i), v))
                .collect()
        })
        .collect()
}

pub fn densify(sparse: &[Vec<(usize, u32)>], ncols: usize) -> Vec<Vec<u32>> {
    sparse
        .iter()
        .map(|r| {
            let mut d = vec![0u32; ncols];
            for &(i, v) in r {
                d[i] = v;
            }
            d
        })
        .collect()
}

/// A basis of the span of the given polynomials, in reduced echelon form.
pub fn echelon_polynomials(ring: &Arc<PolyRing>, polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let k = ring.field();
    let mut mons: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().iter().map(|t| t.0))
        .collect();
    mons.sort_by(|a, b| b.cmp_grevlex(a));
    mons.dedup();
    let pos: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows: Vec<Vec<u32>> = polys
        .iter()
        .map(|p| {
            let mut r = vec![0u32; mons.len()];
            for &(m, c) in p.terms() {
                r[pos[&m]] = c;
            }
            r
        })
        .collect();
    row_reduce(k, &mut rows, mons.len());
    rows.into_iter()
        .map(|r| {
            let terms = r
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (mons[i], c))
                .collect();
            Polynomial::from_sorted_terms(ring, terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_solve() {
        let k = PrimeField::new(7).unwrap();
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(rank(k, &a, 3), 1);
        let ns = nullspace(k, &a, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let s = (0..3).fold(0, |acc, i| k.add(acc, k.mul(a[0][i], x[i])));
            assert_eq!(s, 0);
        }
        assert!(solve(k, &a, 3, &[1, 2]).is_some());
        assert!(solve(k, &a, 3, &[1, 3]).is_none());
    }

    #[test]
    fn echelon_span() {
        let r = PolyRing::standard(3);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let e = echelon_polynomials(&r, vec![p("x0 + x1"), p("x0 - x1"), p("x0")]);
        assert_eq!(e, vec![p("x0"), p("x1")]);
    }
}

/// Scalars `t` with `Σ t_p params_p = target` for vectors of polynomials.
pub fn solve_columns(k: PrimeField, params: &[Vec<Polynomial>], target: &[Polynomial]) -> Option<Vec<u32>> {
    let mut index = MonomialIndex::new();
    let sparse = columns_to_coordinates(params, &mut index);
    let t = columns_to_coordinates(&[target.to_vec()], &mut index).remove(0);
    let n = index.len();
    let dense = densify(&sparse, n);
    let rows: Vec<Vec<u32>> = (0..n).map(|r| dense.iter().map(|c| c[r]).collect()).collect();
    let b = densify(&[t], n).remove(0);
    solve(k, &rows, params.len(), &b)
}
