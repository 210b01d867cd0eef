use super::exp::log0;
use super::frame::{chart_of_frame, form_product, frame_of_chart, Frame};
use super::point::ChartPoint;
use crate::error::{Error, Result};
use crate::linalg::{self, frobenius, max_abs, svd, CMatrix};
use crate::space::GrassmannSpace;

/// A unitary (compact) or `J`-unitary (noncompact) `(n+m) x (n+m)` matrix
/// acting on frames from the left.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    space: GrassmannSpace,
    g: CMatrix,
}

impl Isometry {
    pub fn identity(space: GrassmannSpace) -> Self {
        Self { space, g: CMatrix::identity(space.dim(), space.dim()) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.g
    }

    pub fn space(&self) -> GrassmannSpace {
        self.space
    }

    pub fn apply(&self, f: &Frame) -> Frame {
        Frame::new_unchecked(self.space, &self.g * f.matrix())
    }

    /// `max |g^H Λ g - Λ|`.
    pub fn defect(&self) -> f64 {
        let lhs = form_product(&self.space, &self.g, &self.g);
        let mut lambda = CMatrix::identity(self.space.dim(), self.space.dim());
        for i in 0..self.space.dim() {
            lambda[(i, i)] *= self.space.form_sign(i);
        }
        max_abs(&(lhs - lambda))
    }
}

/// Isometry sending the plane of `f` to the origin plane `O`.
///
/// The frame is completed to a basis `W = [F | G]` that is orthonormal for
/// the form Λ of the space (`I` compact, `diag(I, -I)` noncompact). `G` spans
/// the range of `I - F F^H Λ`, the Λ-orthogonal complement, and is normalized
/// by `(∓G^H Λ G)^{-1/2}`. Then `g = W^{-1} = Λ W^H Λ`.
pub fn transport_frame_to_origin(f: &Frame) -> Result<Isometry> {
    let space = f.space();
    let (n, m, dim) = (space.n(), space.m(), space.dim());
    let fm = f.matrix();
    let mut lambda_fh = fm.adjoint();
    for i in n..dim {
        let s = space.form_sign(i);
        lambda_fh.column_mut(i).iter_mut().for_each(|z| *z *= s);
    }
    let complement_proj = CMatrix::identity(dim, dim) - fm * lambda_fh;
    let d = svd(&complement_proj)?;
    let g0 = d.u.columns(0, m).into_owned();
    let sign = if space.is_compact() { 1.0 } else { -1.0 };
    let gram = form_product(&space, &g0, &g0).map(|z| z * sign);
    let g = g0 * linalg::hermitian_inv_sqrt(&gram)?;

    let mut w = CMatrix::zeros(dim, dim);
    w.view_mut((0, 0), (dim, n)).copy_from(fm);
    w.view_mut((0, n), (dim, m)).copy_from(&g);
    let mut inv = w.adjoint();
    for i in 0..dim {
        let s = space.form_sign(i);
        inv.row_mut(i).iter_mut().for_each(|z| *z *= s);
        inv.column_mut(i).iter_mut().for_each(|z| *z *= s);
    }
    let iso = Isometry { space, g: inv };
    let defect = iso.defect();
    if defect > 1e-8 {
        return Err(Error::Inconsistent(format!("transport is not an isometry on {space} (defect {defect:e})")));
    }
    Ok(iso)
}

/// Isometry sending the chart point `p` to the origin plane.
pub fn transport_to_origin(p: &ChartPoint) -> Result<Isometry> {
    transport_frame_to_origin(&frame_of_chart(p)?)
}

/// Geodesic distance between two planes given by frames.
///
/// The first plane is transported to the origin and the distance read off
/// the logarithm of the image of the second. A compact image on the polar
/// divisor of the origin has no chart logarithm; its distance is the norm of
/// the principal-angle vector.
pub fn frame_distance(f1: &Frame, f2: &Frame) -> Result<f64> {
    let space = f1.space();
    if f2.space() != space {
        return Err(Error::Precondition("frames belong to different spaces".into()));
    }
    let g = transport_frame_to_origin(f1)?;
    let image = g.apply(f2);
    match chart_of_frame(&image) {
        Ok(w) => Ok(frobenius(log0(&w)?.matrix())),
        Err(Error::OnPolarDivisor { .. }) if space.is_compact() => {
            let angles = f1.principal_angles(f2)?;
            Ok(angles.iter().map(|a| a * a).sum::<f64>().sqrt())
        }
        Err(e) => Err(e),
    }
}

/// Geodesic distance between two chart points.
pub fn distance(p1: &ChartPoint, p2: &ChartPoint) -> Result<f64> {
    frame_distance(&frame_of_chart(p1)?, &frame_of_chart(p2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::exp::exp0;
    use crate::geom::frame::chart_transition;
    use crate::geom::point::TangentVector;
    use crate::linalg::real;
    use crate::sampling::SeededRng;

    fn spaces() -> Vec<GrassmannSpace> {
        vec![
            GrassmannSpace::compact(1, 1).unwrap(),
            GrassmannSpace::compact(2, 3).unwrap(),
            GrassmannSpace::compact(3, 2).unwrap(),
            GrassmannSpace::noncompact(1, 2).unwrap(),
            GrassmannSpace::noncompact(2, 2).unwrap(),
            GrassmannSpace::noncompact(3, 1).unwrap(),
        ]
    }

    #[test]
    fn transport_maps_point_to_origin() {
        let mut rng = SeededRng::new(31);
        for space in spaces() {
            for _ in 0..10 {
                let p = rng.chart_point(space);
                let g = transport_to_origin(&p).unwrap();
                assert!(g.defect() < 1e-10);
                let image = g.apply(&frame_of_chart(&p).unwrap());
                let w = chart_of_frame(&image).unwrap();
                assert!(w.matrix().norm() < 1e-10, "{space}: {}", w.matrix().norm());
            }
        }
    }

    #[test]
    fn origin_transport_is_trivial() {
        let space = GrassmannSpace::compact(2, 2).unwrap();
        let g = transport_to_origin(&ChartPoint::origin(space)).unwrap();
        let image = g.apply(&Frame::origin(space));
        assert!(chart_of_frame(&image).unwrap().matrix().norm() < 1e-14);
    }

    #[test]
    fn transport_preserves_angles() {
        let mut rng = SeededRng::new(32);
        for space in spaces() {
            let g = transport_to_origin(&rng.chart_point(space)).unwrap();
            for _ in 0..10 {
                let f1 = frame_of_chart(&rng.chart_point(space)).unwrap();
                let f2 = frame_of_chart(&rng.chart_point(space)).unwrap();
                let (before, after) = if space.is_compact() {
                    (f1.principal_angles(&f2).unwrap(), g.apply(&f1).principal_angles(&g.apply(&f2)).unwrap())
                } else {
                    (f1.hyperbolic_angles(&f2).unwrap(), g.apply(&f1).hyperbolic_angles(&g.apply(&f2)).unwrap())
                };
                for (a, b) in before.iter().zip(&after) {
                    assert!((a - b).abs() < 1e-10, "{space}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn distance_basic_properties() {
        let mut rng = SeededRng::new(33);
        for space in spaces() {
            let p = rng.chart_point(space);
            assert!(distance(&p, &p).unwrap() < 1e-7);
            for _ in 0..10 {
                let q = rng.chart_point(space);
                let d1 = distance(&p, &q).unwrap();
                let d2 = distance(&q, &p).unwrap();
                assert!((d1 - d2).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn scalar_unit_speed() {
        let space = GrassmannSpace::compact(1, 1).unwrap();
        for t in [0.1f64, 0.5, 1.0, 1.5] {
            let p = ChartPoint::new(space, CMatrix::from_element(1, 1, real(t.tan()))).unwrap();
            let d = distance(&ChartPoint::origin(space), &p).unwrap();
            assert!((d - t).abs() < 1e-12);
        }
    }

    #[test]
    fn noncompact_distance_matches_hyperbolic_angles() {
        let mut rng = SeededRng::new(34);
        let space = GrassmannSpace::noncompact(2, 3).unwrap();
        for _ in 0..20 {
            let f1 = frame_of_chart(&rng.chart_point(space)).unwrap();
            let f2 = frame_of_chart(&rng.chart_point(space)).unwrap();
            let by_angles = f1.hyperbolic_angles(&f2).unwrap().iter().map(|a| a * a).sum::<f64>().sqrt();
            assert!((frame_distance(&f1, &f2).unwrap() - by_angles).abs() < 1e-8);
        }
    }

    #[test]
    fn distance_through_polar_divisor() {
        let space = GrassmannSpace::compact(2, 2).unwrap();
        let d = frame_distance(&Frame::origin(space), &Frame::coordinate(space, &[2, 3]).unwrap()).unwrap();
        assert!((d - std::f64::consts::FRAC_PI_2 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn triangle_inequality() {
        let mut rng = SeededRng::new(35);
        for space in spaces() {
            for _ in 0..100 {
                let a = rng.chart_point(space);
                let b = rng.chart_point(space);
                let c = rng.chart_point(space);
                let ab = distance(&a, &b).unwrap();
                let bc = distance(&b, &c).unwrap();
                let ac = distance(&a, &c).unwrap();
                assert!(ac <= ab + bc + 1e-9, "{space}: {ac} > {ab} + {bc}");
            }
        }
    }

    #[test]
    fn distance_is_chart_independent() {
        let mut rng = SeededRng::new(36);
        let space = GrassmannSpace::compact(2, 2).unwrap();
        for _ in 0..20 {
            let p = rng.chart_point(space);
            let q = rng.chart_point(space);
            let d = distance(&p, &q).unwrap();
            let rows = [1, 3];
            let pw = chart_transition(space, &frame_of_chart(&p).unwrap(), &rows).unwrap();
            let qw = chart_transition(space, &frame_of_chart(&q).unwrap(), &rows).unwrap();
            assert!((distance(&pw, &qw).unwrap() - d).abs() < 1e-9);
        }
    }

    #[test]
    fn exp_distance_matches_arc_length() {
        let mut rng = SeededRng::new(37);
        let space = GrassmannSpace::compact(2, 3).unwrap();
        for _ in 0..20 {
            let b: TangentVector = rng.tangent(space, 1.0);
            for t in [0.2, 0.9, 1.5] {
                let d = distance(&ChartPoint::origin(space), &exp0(&b.scaled(t)).unwrap()).unwrap();
                assert!((d - t).abs() < 1e-8);
            }
        }
    }
}
