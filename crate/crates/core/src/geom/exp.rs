//! Geodesic exponential and logarithm at the origin.
//!
//! With `B = U S V^H` the geodesic `t -> Exp_o(tB)` has chart coordinates
//! `Z = U ta(tS) V^H` (`ta = tan` compact, `tanh` noncompact) and frame
//! `[I + U (co(tS) - 1) U^H ; V si(tS) U^H]`.

use super::frame::Frame;
use super::point::{ChartPoint, TangentVector};
use crate::error::{Error, Result};
use crate::linalg::{apply_spectral, svd, CMatrix};

/// Distance of `cos(s)` from zero below which `tan(s)` is treated as a pole.
pub const TAN_POLE_TOL: f64 = 1e-12;

/// Geodesic endpoint `Exp_o(B)` in chart coordinates.
pub fn exp0(b: &TangentVector) -> Result<ChartPoint> {
    let space = b.space();
    let z = if space.is_compact() {
        apply_spectral(b.matrix(), |s| (s.cos().abs() >= TAN_POLE_TOL).then(|| s.tan()))
            .map_err(|e| match e {
                Error::Singularity { value } => Error::ConjugateToChart { singular_value: value },
                other => other,
            })?
    } else {
        apply_spectral(b.matrix(), |s| Some(s.tanh()))?
    };
    ChartPoint::new(space, z).map_err(|e| match e {
        Error::Domain(_) => Error::Domain(
            "geodesic endpoint is indistinguishable from the boundary in double precision".into(),
        ),
        other => other,
    })
}

/// Frame of `Exp_o(B)`; defined for every `B`, including endpoints on the
/// polar divisor of the origin that the chart misses.
pub fn exp0_frame(b: &TangentVector) -> Result<Frame> {
    let space = b.space();
    let (n, m) = (space.n(), space.m());
    let d = svd(b.matrix())?;
    let (co, si): (fn(f64) -> f64, fn(f64) -> f64) = if space.is_compact() {
        (f64::cos, f64::sin)
    } else {
        (f64::cosh, f64::sinh)
    };
    let mut u_co = d.u.clone();
    let mut v_si = d.v.clone();
    for (j, &s) in d.singular_values.iter().enumerate() {
        let (cw, sw) = (co(s) - 1.0, si(s));
        u_co.column_mut(j).iter_mut().for_each(|x| *x *= cw);
        v_si.column_mut(j).iter_mut().for_each(|x| *x *= sw);
    }
    let top = CMatrix::identity(n, n) + u_co * d.u.adjoint();
    let bottom = v_si * d.u.adjoint();
    let mut f = CMatrix::zeros(n + m, n);
    f.view_mut((0, 0), (n, n)).copy_from(&top);
    f.view_mut((n, 0), (m, n)).copy_from(&bottom);
    Frame::new(space, f)
}

/// Principal logarithm: the tangent vector of the minimizing geodesic from the
/// origin to `p` (compact singular values land in `[0, pi/2)`).
pub fn log0(p: &ChartPoint) -> Result<TangentVector> {
    let space = p.space();
    let b = if space.is_compact() {
        apply_spectral(p.matrix(), |s| Some(s.atan()))?
    } else {
        apply_spectral(p.matrix(), |s| (s < 1.0).then(|| s.atanh())).map_err(|e| match e {
            Error::Singularity { value } => {
                Error::Domain(format!("noncompact chart point has singular value {value} >= 1"))
            }
            other => other,
        })?
    };
    TangentVector::new(space, b)
}
