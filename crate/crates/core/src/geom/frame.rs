use nalgebra::DMatrix;

use super::point::ChartPoint;
use crate::error::{Error, Result};
use crate::linalg::{self, is_finite, max_abs, real, svd, CMatrix};
use crate::space::GrassmannSpace;

/// Gram tolerance for a matrix to be accepted as a frame.
pub const FRAME_TOL: f64 = 1e-10;

/// Top blocks with smallest singular value below this are treated as
/// singular by [`chart_of_frame`] and [`chart_transition`].
pub const CHART_SINGULAR_TOL: f64 = 1e-12;

/// An `n`-plane given by an `(n+m) x n` basis.
///
/// Compact frames are orthonormal. Noncompact frames are orthonormal for the
/// indefinite form `J = diag(I_n, -I_m)`, i.e. `F^H J F = I_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    space: GrassmannSpace,
    f: CMatrix,
}

/// `F^H Λ G` where Λ is the form of `space`.
pub(crate) fn form_product(space: &GrassmannSpace, a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut lb = b.clone();
    for i in space.n()..space.dim() {
        let s = space.form_sign(i);
        lb.row_mut(i).iter_mut().for_each(|z| *z *= s);
    }
    a.adjoint() * lb
}

fn form_gram_deviation(space: &GrassmannSpace, f: &CMatrix) -> f64 {
    let g = form_product(space, f, f);
    max_abs(&(g - CMatrix::identity(f.ncols(), f.ncols())))
}

impl Frame {
    /// Wraps a matrix that already satisfies the Gram condition of `space`.
    pub fn new(space: GrassmannSpace, f: CMatrix) -> Result<Self> {
        if f.shape() != (space.dim(), space.n()) {
            return Err(Error::DimensionMismatch {
                expected: format!("frame of shape {}x{}", space.dim(), space.n()),
                got: format!("{}x{}", f.nrows(), f.ncols()),
            });
        }
        if !is_finite(&f) {
            return Err(Error::Precondition("frame has non-finite entries".into()));
        }
        let dev = form_gram_deviation(&space, &f);
        if dev > FRAME_TOL {
            return Err(Error::Precondition(format!(
                "frame violates its Gram condition by {dev:e}"
            )));
        }
        Ok(Self { space, f })
    }

    pub(crate) fn new_unchecked(space: GrassmannSpace, f: CMatrix) -> Self {
        Self { space, f }
    }

    /// Normalizes an arbitrary full-rank basis of a plane, `F = R (R^H Λ R)^{-1/2}`.
    /// The Hermitian square root keeps `det` of any square block real positive
    /// relative to the raw basis, so overlaps keep their phase.
    pub fn orthonormalize(space: GrassmannSpace, raw: CMatrix) -> Result<Self> {
        if raw.shape() != (space.dim(), space.n()) {
            return Err(Error::DimensionMismatch {
                expected: format!("basis of shape {}x{}", space.dim(), space.n()),
                got: format!("{}x{}", raw.nrows(), raw.ncols()),
            });
        }
        let f = if space.is_compact() {
            let d = svd(&raw)?;
            if d.smallest() <= 1e-14 * d.largest().max(1.0) {
                return Err(Error::Precondition("basis is rank deficient".into()));
            }
            d.u * d.v.adjoint()
        } else {
            let not_positive =
                || Error::Domain("basis does not span a positive plane for the form diag(I, -I)".into());
            let gram = form_product(&space, &raw, &raw);
            let r = linalg::hermitian_inv_sqrt(&gram).map_err(|_| not_positive())?;
            // the SVD-based inverse root only sees |eigenvalues|; an indefinite
            // gram shows up as a failed normalization
            let f = &raw * r;
            if form_gram_deviation(&space, &f) > 1e-8 {
                return Err(not_positive());
            }
            f
        };
        Ok(Self { space, f })
    }

    /// The origin plane `O = span(e_1, ..., e_n)`.
    pub fn origin(space: GrassmannSpace) -> Self {
        Self { space, f: CMatrix::identity(space.dim(), space.n()) }
    }

    /// The coordinate plane spanned by `e_i` for `i` in `rows` (0-based).
    pub fn coordinate(space: GrassmannSpace, rows: &[usize]) -> Result<Self> {
        check_selection(&space, rows)?;
        if !space.is_compact() && rows.iter().any(|&r| r >= space.n()) {
            return Err(Error::Domain(
                "only span(e_1..e_n) is a coordinate plane of the noncompact dual".into(),
            ));
        }
        let mut f = CMatrix::zeros(space.dim(), space.n());
        for (j, &r) in rows.iter().enumerate() {
            f[(r, j)] = real(1.0);
        }
        Ok(Self { space, f })
    }

    pub fn space(&self) -> GrassmannSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.f
    }

    pub fn into_matrix(self) -> CMatrix {
        self.f
    }

    /// Leading `n x n` block.
    pub fn top(&self) -> CMatrix {
        self.f.rows(0, self.space.n()).into_owned()
    }

    /// Trailing `m x n` block.
    pub fn bottom(&self) -> CMatrix {
        self.f.rows(self.space.n(), self.space.m()).into_owned()
    }

    /// `F F^H`, independent of the choice of basis. For compact frames this is
    /// the orthogonal projection onto the plane.
    pub fn projection(&self) -> CMatrix {
        &self.f * self.f.adjoint()
    }

    /// Same plane, basis multiplied on the right by `u` (must be unitary).
    pub fn regauge(&self, u: &CMatrix) -> Result<Self> {
        Frame::new(self.space, &self.f * u)
    }

    /// Stationary angles between two compact planes.
    pub fn principal_angles(&self, other: &Frame) -> Result<Vec<f64>> {
        self.space.require_compact("principal_angles")?;
        other.space.require_compact("principal_angles")?;
        linalg::principal_angles(&self.f, &other.f)
    }

    /// Hyperbolic angles between two planes of the noncompact dual. Their
    /// hyperbolic cosines are the singular values of `F1^H J F2`; they are
    /// computed as `arsinh` of the singular values of the bottom block of `F2`
    /// after `F1` is moved to the origin, which keeps small angles accurate.
    /// Their Euclidean norm is the geodesic distance.
    pub fn hyperbolic_angles(&self, other: &Frame) -> Result<Vec<f64>> {
        if self.space.is_compact() || other.space.is_compact() {
            return Err(Error::UnsupportedSpace { op: "hyperbolic_angles", required: "noncompact" });
        }
        let g = crate::geom::transport_frame_to_origin(self)?;
        let image = g.apply(other);
        let mut a: Vec<f64> = linalg::singular_values(&image.bottom())?.iter().map(|&s| s.asinh()).collect();
        a.resize(self.space.n(), 0.0);
        a.sort_by(|x, y| x.total_cmp(y));
        Ok(a)
    }
}

fn check_selection(space: &GrassmannSpace, rows: &[usize]) -> Result<()> {
    let mut sorted = rows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != space.n() || rows.len() != space.n() || sorted.iter().any(|&r| r >= space.dim()) {
        return Err(Error::Precondition(format!(
            "row selection {rows:?} must be {} distinct indices below {}",
            space.n(),
            space.dim()
        )));
    }
    Ok(())
}

/// The basis `[I_n ; Z^H]` before normalization, so that
/// `raw(Z1)^H raw(Z2) = I + Z1 Z2^H`.
pub fn raw_frame(z: &CMatrix) -> CMatrix {
    let (n, m) = z.shape();
    let mut f = CMatrix::zeros(n + m, n);
    f.view_mut((0, 0), (n, n)).fill_with_identity();
    f.view_mut((n, 0), (m, n)).copy_from(&z.adjoint());
    f
}

/// Normalized frame of a chart point: `[I ; Z^H] (I + eps Z Z^H)^{-1/2}`.
pub fn frame_of_chart(p: &ChartPoint) -> Result<Frame> {
    let space = p.space();
    let z = p.matrix();
    let eps = space.epsilon();
    let d = svd(z)?;
    if eps < 0.0 && d.largest() >= 1.0 {
        return Err(Error::Domain(format!(
            "noncompact chart point has singular value {} >= 1",
            d.largest()
        )));
    }
    // (I + eps Z Z^H)^{-1/2} = I + U ((1 + eps s^2)^{-1/2} - 1) U^H
    let n = space.n();
    let mut scaled_u = d.u.clone();
    for (j, &s) in d.singular_values.iter().enumerate() {
        let w = 1.0 / (1.0 + eps * s * s).sqrt() - 1.0;
        scaled_u.column_mut(j).iter_mut().for_each(|x| *x *= w);
    }
    let norm = CMatrix::identity(n, n) + scaled_u * d.u.adjoint();
    Ok(Frame::new_unchecked(space, raw_frame(z) * norm))
}

fn solve_right(block: &CMatrix, rhs: &CMatrix) -> Option<CMatrix> {
    // X = rhs * block^{-1}  <=>  block^H X^H = rhs^H
    let lu = block.adjoint().lu();
    lu.solve(&rhs.adjoint()).map(|x| x.adjoint())
}

/// Chart coordinates of a plane: `Z^H = F_bottom F_top^{-1}`.
pub fn chart_of_frame(f: &Frame) -> Result<ChartPoint> {
    let top = f.top();
    let smin = svd(&top)?.smallest();
    if smin < CHART_SINGULAR_TOL {
        return Err(Error::OnPolarDivisor { min_singular: smin });
    }
    let zh = solve_right(&top, &f.bottom()).ok_or(Error::OnPolarDivisor { min_singular: smin })?;
    ChartPoint::new(f.space(), zh.adjoint())
}

/// Coordinates of the plane in the chart centred at the coordinate plane of
/// `rows`: rows `rows` play the role of the top block and the remaining rows,
/// in ascending order, the bottom block. Compact space only.
pub fn chart_transition(space: GrassmannSpace, f: &Frame, rows: &[usize]) -> Result<ChartPoint> {
    space.require_compact("chart_transition")?;
    check_selection(&space, rows)?;
    let permuted = permute_rows(f.matrix(), &chart_order(&space, rows));
    let frame = Frame::new_unchecked(space, permuted);
    match chart_of_frame(&frame) {
        Err(Error::OnPolarDivisor { min_singular }) => Err(Error::WrongChart { min_singular }),
        other => other,
    }
}

/// Row order putting `rows` first (in the given order) and the complement after.
pub fn chart_order(space: &GrassmannSpace, rows: &[usize]) -> Vec<usize> {
    let mut order = rows.to_vec();
    order.extend((0..space.dim()).filter(|r| !rows.contains(r)));
    order
}

pub(crate) fn permute_rows(m: &CMatrix, order: &[usize]) -> CMatrix {
    DMatrix::from_fn(order.len(), m.ncols(), |i, j| m[(order[i], j)])
}
