//! Dense complex linear algebra: thin SVD, tolerant rank, spectral matrix
//! functions of rectangular matrices and principal angles between planes.
//!
//! Every matrix function of the form `B f(sqrt(B*B)) / sqrt(B*B)` used by the
//! geometry code goes through a single SVD of `B`, never through `B*B`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Relative tolerance used by [`rank_tol`] unless the caller overrides it.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Maximum Gram deviation accepted by routines that require orthonormal input.
pub const ORTHONORMAL_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |F^H F - I|` entrywise.
pub fn gram_deviation(f: &CMatrix) -> f64 {
    let g = f.adjoint() * f;
    max_abs(&(g - CMatrix::identity(f.ncols(), f.ncols())))
}

/// Real diagonal matrix as a complex one.
pub fn diag_real(d: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(d.len(), d.iter().map(|&x| real(x))))
}

/// Rectangular matrix with `d` on its leading diagonal.
pub fn rect_diag(rows: usize, cols: usize, d: &[f64]) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    for (i, &x) in d.iter().enumerate().take(rows.min(cols)) {
        m[(i, i)] = real(x);
    }
    m
}

/// Thin singular value decomposition `M = U diag(s) V^H`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `rows x k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: CMatrix,
    /// Nonincreasing, nonnegative.
    pub singular_values: Vec<f64>,
    /// `cols x k` with orthonormal columns.
    pub v: CMatrix,
}

impl SvdResult {
    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|s| s)
    }

    /// `U diag(f(s)) V^H`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let w: Vec<f64> = self.singular_values.iter().map(|&s| f(s)).collect();
        self.with_spectrum(&w)
    }

    /// `U diag(w) V^H`.
    pub fn with_spectrum(&self, w: &[f64]) -> CMatrix {
        let mut us = self.u.clone();
        for (j, &x) in w.iter().enumerate() {
            us.column_mut(j).iter_mut().for_each(|z| *z *= x);
        }
        us * self.v.adjoint()
    }

    pub fn largest(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn smallest(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }
}

/// Thin SVD with singular values sorted nonincreasing.
pub fn svd(m: &CMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::Precondition(format!("empty {rows}x{cols} matrix")));
    }
    if !is_finite(m) {
        return Err(Error::Precondition("matrix has non-finite entries".into()));
    }
    let f = faer::Mat::<faer::c64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let d = f.thin_svd().map_err(|_| Error::NumericalFailure { rows, cols })?;
    let (fu, fv) = (d.U(), d.V());
    let k = rows.min(cols);
    let singular_values: Vec<f64> = d.S().column_vector().iter().map(|s| s.re).collect();
    Ok(SvdResult {
        u: CMatrix::from_fn(rows, k, |i, j| fu[(i, j)]),
        singular_values,
        v: CMatrix::from_fn(cols, k, |i, j| fv[(i, j)]),
    })
}

pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(m)?.singular_values)
}

/// Evaluates `B f(sqrt(B^H B)) / sqrt(B^H B)` as `U f(S) V^H`.
///
/// `f` returns `None` where it is undefined; the offending singular value is
/// reported. A zero singular value contributes `f(0)`, so `f` should vanish at
/// the origin (odd functions such as tan, tanh, arctan, artanh all do).
pub fn apply_spectral<F>(b: &CMatrix, f: F) -> Result<CMatrix>
where
    F: Fn(f64) -> Option<f64>,
{
    let d = svd(b)?;
    let mut values = Vec::with_capacity(d.singular_values.len());
    for &s in &d.singular_values {
        match f(s) {
            Some(y) if y.is_finite() => values.push(y),
            _ => return Err(Error::Singularity { value: s }),
        }
    }
    Ok(d.with_spectrum(&values))
}

/// Number of singular values above `tol * max(1, s_max)`.
pub fn rank_tol(m: &CMatrix, tol: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("rank tolerance must be positive, got {tol}")));
    }
    let s = singular_values(m)?;
    let scale = s.first().copied().unwrap_or(0.0).max(1.0);
    Ok(s.iter().filter(|&&x| x > tol * scale).count())
}

fn require_orthonormal(f: &CMatrix, name: &str) -> Result<()> {
    let dev = gram_deviation(f);
    if dev > ORTHONORMAL_TOL {
        return Err(Error::Precondition(format!(
            "{name} does not have orthonormal columns (Gram deviation {dev:e})"
        )));
    }
    Ok(())
}

/// Principal (stationary) angles between the column spans of two
/// orthonormal frames, nondecreasing in `[0, pi/2]`.
///
/// Cosines come from the singular values of `A^H B`. Angles below pi/4 are
/// taken from the sines, the singular values of `B - A A^H B`, where arccos
/// would lose half the digits.
pub fn principal_angles(a: &CMatrix, b: &CMatrix) -> Result<Vec<f64>> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: format!("{:?}", a.shape()),
            got: format!("{:?}", b.shape()),
        });
    }
    require_orthonormal(a, "first frame")?;
    require_orthonormal(b, "second frame")?;
    let cross = a.adjoint() * b;
    let cosines = singular_values(&cross)?;
    let residual = b - a * &cross;
    let mut sines = singular_values(&residual)?;
    sines.reverse();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let angles = cosines
        .iter()
        .zip(sines.iter())
        .map(|(&cs, &sn)| {
            if cs > half {
                sn.clamp(0.0, 1.0).asin()
            } else {
                cs.clamp(-1.0, 1.0).acos()
            }
        })
        .collect::<Vec<_>>();
    let mut angles = angles;
    angles.sort_by(|x, y| x.total_cmp(y));
    Ok(angles)
}

/// `M^{-1/2}` for a Hermitian positive definite matrix.
pub fn hermitian_inv_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let d = svd(m)?;
    if d.smallest() <= 0.0 {
        return Err(Error::Domain("matrix is not positive definite".into()));
    }
    let mut vs = d.v.clone();
    for (j, &s) in d.singular_values.iter().enumerate() {
        let w = 1.0 / s.sqrt();
        vs.column_mut(j).iter_mut().for_each(|z| *z *= w);
    }
    Ok(vs * d.v.adjoint())
}
