//! Matrix factorizations `φψ = ψφ = f·id` and Knörrer's constructions.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::groebner::{lift, Column};
use crate::homology::{determinant, FreeGradedModule, GradedMap};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// A pair of square maps `φ: F1 → F0`, `ψ: F0(-deg f) → F1` with
/// `φψ = f·id` and `ψφ = f·id`. `rank` is the exponent `r` with
/// `det φ = c·f^r`, the rank of `coker φ` over `P/(f)`. For reducible `f`
/// the determinant need not be a power of `f`; `rank` then holds the size.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    pub f: Polynomial,
    pub phi: GradedMap,
    pub psi: GradedMap,
    pub rank: usize,
}

/// Outcome of [`mf_verify`]; offending entries are `(product, row, column)`.
#[derive(Clone, Debug, Serialize)]
pub struct MfReport {
    pub size: usize,
    pub square: bool,
    pub degree_compatible: bool,
    pub phi_psi: bool,
    pub psi_phi: bool,
    /// `det φ · det ψ = c·f^size`.
    pub determinant_product: bool,
    /// `r` with `det φ = c·f^r`, when it exists.
    pub determinant_power: Option<usize>,
    pub offending: Vec<(String, usize, usize)>,
    pub valid: bool,
}

impl MatrixFactorization {
    fn with_rank(f: Polynomial, phi: GradedMap, psi: GradedMap) -> Self {
        let mut mf = MatrixFactorization { f, phi, psi, rank: 0 };
        mf.rank = mf.determinant_power().unwrap_or(mf.size());
        mf
    }

    pub fn size(&self) -> usize {
        self.phi.nrows()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.f.ring()
    }

    /// The 1×1 factorization `f = a·b` with the target generator in degree 0.
    pub fn from_product(a: &Polynomial, b: &Polynomial) -> Result<Self> {
        let ring = a.ring().clone();
        let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) else {
            return usage("factors must be nonzero and homogeneous");
        };
        let (da, db) = (da as i32, db as i32);
        let f = a * b;
        let phi = GradedMap::from_columns(
            &ring,
            FreeGradedModule::from_degrees(vec![da]),
            FreeGradedModule::from_degrees(vec![0]),
            vec![vec![a.clone()]],
        );
        let psi = GradedMap::from_columns(
            &ring,
            FreeGradedModule::from_degrees(vec![da + db]),
            FreeGradedModule::from_degrees(vec![da]),
            vec![vec![b.clone()]],
        );
        Ok(MatrixFactorization::with_rank(f, phi, psi))
    }

    /// Builds a factorization from row lists, with `F0` generated in the
    /// given degrees; the remaining degrees are read off the entries.
    pub fn from_rows(
        f: &Polynomial,
        phi: Vec<Vec<Polynomial>>,
        psi: Vec<Vec<Polynomial>>,
        f0: &[i32],
    ) -> Result<Self> {
        let ring = f.ring().clone();
        let m = phi.len();
        if f0.len() != m || psi.len() != m || phi.iter().chain(&psi).any(|r| r.len() != m) {
            return usage("matrix factorization needs square matrices of equal size");
        }
        let df = f.homogeneous_degree().ok_or_else(|| Error::Usage("f must be homogeneous".into()))? as i32;
        let phi = GradedMap::from_rows_with_target(&ring, FreeGradedModule::from_degrees(f0.to_vec()), phi, 0)?;
        let psi = GradedMap::from_rows_with_target(&ring, phi.source().clone(), psi, 0)?;
        let want: Vec<i32> = f0.iter().map(|a| a + df).collect();
        if psi.source().degrees() != want.as_slice() {
            return usage("ψ is not graded compatibly with φ and f");
        }
        Ok(MatrixFactorization::with_rank(f.clone(), phi, psi))
    }

    /// `r` with `det φ = c·f^r`, if such an `r` exists.
    pub fn determinant_power(&self) -> Option<usize> {
        let det = determinant(self.ring(), &self.phi.rows());
        power_of(&det, &self.f)
    }
}

fn same_up_to_scalar(a: &Polynomial, b: &Polynomial) -> bool {
    match (a.leading_term(), b.leading_term()) {
        (Some((_, ca)), Some((_, cb))) => a.scale(cb) == b.scale(ca),
        _ => false,
    }
}

/// `r` with `det = c·f^r`.
fn power_of(det: &Polynomial, f: &Polynomial) -> Option<usize> {
    let dd = det.homogeneous_degree()? as usize;
    let df = f.homogeneous_degree()? as usize;
    if df == 0 || dd % df != 0 {
        return None;
    }
    let r = dd / df;
    same_up_to_scalar(det, &f.pow(r as u32)).then_some(r)
}

fn scalar_offenders(
    tag: &str,
    prod: &[Vec<Polynomial>],
    f: &Polynomial,
    out: &mut Vec<(String, usize, usize)>,
) -> bool {
    let zero = Polynomial::zero(f.ring());
    let mut ok = true;
    for (i, row) in prod.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let want = if i == j { f } else { &zero };
            if p != want {
                ok = false;
                out.push((tag.to_string(), i, j));
            }
        }
    }
    ok
}

fn matmul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>], ring: &Arc<PolyRing>) -> Vec<Vec<Polynomial>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Polynomial::zero(ring);
                    for (k, brow) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !brow[j].is_zero() {
                            acc = &acc + &(&a[i][k] * &brow[j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Checks both products against `f·id` and the determinant identity.
pub fn mf_verify(mf: &MatrixFactorization) -> MfReport {
    let ring = mf.ring().clone();
    let m = mf.phi.nrows();
    let square = mf.phi.ncols() == m && mf.psi.nrows() == m && mf.psi.ncols() == m;
    let degree_compatible = mf.phi.is_degree_compatible() && mf.psi.is_degree_compatible();
    let mut offending = Vec::new();
    if !square {
        return MfReport {
            size: m,
            square,
            degree_compatible,
            phi_psi: false,
            psi_phi: false,
            determinant_product: false,
            determinant_power: None,
            offending,
            valid: false,
        };
    }
    let (a, b) = (mf.phi.rows(), mf.psi.rows());
    let phi_psi = scalar_offenders("φψ", &matmul(&a, &b, &ring), &mf.f, &mut offending);
    let psi_phi = scalar_offenders("ψφ", &matmul(&b, &a, &ring), &mf.f, &mut offending);
    let det_phi = determinant(&ring, &a);
    let determinant_power = power_of(&det_phi, &mf.f);
    let determinant_product = same_up_to_scalar(&(&det_phi * &determinant(&ring, &b)), &mf.f.pow(m as u32));
    let det_ok = determinant_product && determinant_power.map_or(mf.rank == m, |r| r == mf.rank);
    MfReport {
        size: m,
        square,
        degree_compatible,
        phi_psi,
        psi_phi,
        determinant_product,
        determinant_power,
        valid: degree_compatible && phi_psi && psi_phi && det_ok,
        offending,
    }
}

/// Solves `φ ψ = f·id` column by column.
pub fn mf_complete(phi: &GradedMap, f: &Polynomial) -> Result<MatrixFactorization> {
    let ring = phi.ring().clone();
    let m = phi.nrows();
    if phi.ncols() != m {
        return usage("φ must be square");
    }
    let df = f.homogeneous_degree().ok_or_else(|| Error::Usage("f must be homogeneous".into()))? as i32;
    let targets: Vec<Column> = (0..m)
        .map(|j| {
            (0..m)
                .map(|i| if i == j { f.clone() } else { Polynomial::zero(&ring) })
                .collect()
        })
        .collect();
    let lifts = lift(&ring, phi.target().degrees(), phi.columns(), phi.source().degrees(), &targets);
    let cols: Vec<Column> = lifts
        .into_iter()
        .enumerate()
        .map(|(j, c)| c.ok_or_else(|| Error::Construction(format!("f·e_{j} is not in the image of φ"))))
        .collect::<Result<_>>()?;
    let psi = GradedMap::from_columns(
        &ring,
        phi.target().twist(-df),
        phi.source().clone(),
        cols,
    );
    Ok(MatrixFactorization::with_rank(f.clone(), phi.clone(), psi))
}

fn block(
    ring: &Arc<PolyRing>,
    tl: &Polynomial,
    br: &Polynomial,
    phi: &[Vec<Polynomial>],
    psi: &[Vec<Polynomial>],
) -> Vec<Vec<Polynomial>> {
    let m = phi.len();
    let zero = Polynomial::zero(ring);
    let mut rows = vec![vec![zero; 2 * m]; 2 * m];
    for i in 0..m {
        rows[i][i] = tl.clone();
        rows[m + i][m + i] = br.neg();
        for j in 0..m {
            rows[i][m + j] = phi[i][j].clone();
            rows[m + i][j] = psi[i][j].clone();
        }
    }
    rows
}

fn doubled(mf: &MatrixFactorization, f_new: Polynomial, phi: Vec<Vec<Polynomial>>, psi: Vec<Vec<Polynomial>>) -> MatrixFactorization {
    let ring = mf.ring().clone();
    let a = mf.phi.target().degrees();
    let b = mf.phi.source().degrees();
    // target F0 ⊕ F1(1), source F0(-1) ⊕ F1
    let tgt: Vec<i32> = a.iter().copied().chain(b.iter().map(|d| d - 1)).collect();
    let src: Vec<i32> = a.iter().map(|d| d + 1).chain(b.iter().copied()).collect();
    let to_cols = |rows: &[Vec<Polynomial>]| -> Vec<Column> {
        (0..rows.len()).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
    };
    let phi = GradedMap::from_columns(
        &ring,
        FreeGradedModule::from_degrees(src.clone()),
        FreeGradedModule::from_degrees(tgt.clone()),
        to_cols(&phi),
    );
    let psi = GradedMap::from_columns(
        &ring,
        FreeGradedModule::from_degrees(tgt.iter().map(|d| d + 2).collect()),
        FreeGradedModule::from_degrees(src),
        to_cols(&psi),
    );
    MatrixFactorization::with_rank(f_new, phi, psi)
}

fn require_quadric(mf: &MatrixFactorization) -> Result<()> {
    if mf.f.homogeneous_degree() != Some(2) {
        return usage("Knörrer's construction keeps the equation homogeneous only for quadrics");
    }
    if mf.ring().field().characteristic() == 2 {
        return usage("Knörrer's construction needs odd characteristic");
    }
    Ok(())
}

/// The factorization `[[x·I, φ], [ψ, -x·I]]` (twice) of `f + x²`.
pub fn knoerrer_double_cover(mf: &MatrixFactorization, x: usize) -> Result<MatrixFactorization> {
    require_quadric(mf)?;
    let ring = mf.ring().clone();
    if x >= ring.nvars() {
        return usage("variable index out of range");
    }
    let xv = Polynomial::var(&ring, x);
    let f_new = &mf.f + &(&xv * &xv);
    let (a, b) = (mf.phi.rows(), mf.psi.rows());
    let rows = block(&ring, &xv, &xv, &a, &b);
    Ok(doubled(mf, f_new, rows.clone(), rows))
}

/// The factorization `[[x·I, φ], [ψ, -y·I]]`, `[[y·I, φ], [ψ, -x·I]]` of
/// `f + xy`. Over odd characteristic `xy` is a sum of two squares after a
/// linear change of coordinates, so this is the double step of the
/// construction above.
pub fn knoerrer_xy(mf: &MatrixFactorization, x: usize, y: usize) -> Result<MatrixFactorization> {
    require_quadric(mf)?;
    let ring = mf.ring().clone();
    if x == y {
        return usage("the two new variables must differ");
    }
    if x >= ring.nvars() || y >= ring.nvars() {
        return usage("variable index out of range");
    }
    let (xv, yv) = (Polynomial::var(&ring, x), Polynomial::var(&ring, y));
    let f_new = &mf.f + &(&xv * &yv);
    let (a, b) = (mf.phi.rows(), mf.psi.rows());
    let phi = block(&ring, &xv, &yv, &a, &b);
    let psi = block(&ring, &yv, &xv, &a, &b);
    Ok(doubled(mf, f_new, phi, psi))
}
