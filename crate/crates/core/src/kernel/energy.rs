use crate::error::{Error, Result};
use crate::geom::{chart_order, chart_transition, ChartPoint, Frame};
use crate::kernel::plucker::subsets;
use crate::linalg::{diag_real, frobenius, CMatrix};
use crate::space::GrassmannSpace;

/// Relative gap below which two weights count as equal.
pub const DISTINCT_GAP: f64 = 1e-6;

/// Gradient norm accepted as critical by [`critical_points`].
pub const CRITICAL_TOL: f64 = 1e-8;

/// Diagonal weights `eps_1, ..., eps_{n+m}` of the Hamiltonian `A = diag(eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpec {
    eps: Vec<f64>,
}

impl EnergySpec {
    pub fn new(eps: Vec<f64>) -> Result<Self> {
        if eps.is_empty() || eps.iter().any(|e| !e.is_finite()) {
            return Err(Error::Precondition("energy weights must be finite and non-empty".into()));
        }
        Ok(Self { eps })
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    /// First pair `(i, j)` with `|eps_i - eps_j| < 1e-6 * max(1, max |eps|)`.
    pub fn degenerate_pair(&self) -> Option<(usize, usize)> {
        let scale = self.eps.iter().fold(1.0f64, |a, e| a.max(e.abs()));
        for i in 0..self.eps.len() {
            for j in i + 1..self.eps.len() {
                if (self.eps[i] - self.eps[j]).abs() < DISTINCT_GAP * scale {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn require_distinct(&self) -> Result<()> {
        match self.degenerate_pair() {
            Some((i, j)) => Err(Error::DegenerateSpec { i, j }),
            None => Ok(()),
        }
    }

    fn check(&self, space: &GrassmannSpace) -> Result<()> {
        space.require_compact("energy")?;
        if self.eps.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} weights", space.dim()),
                got: format!("{} weights", self.eps.len()),
            });
        }
        Ok(())
    }

    fn permuted(&self, order: &[usize]) -> Self {
        Self { eps: order.iter().map(|&i| self.eps[i]).collect() }
    }
}

/// `tr(A F F^H)`, the covariant symbol of `A` on the plane of `f`.
pub fn energy(spec: &EnergySpec, f: &Frame) -> Result<f64> {
    spec.check(&f.space())?;
    let fm = f.matrix();
    Ok(fm.row_iter().zip(&spec.eps).map(|(row, e)| e * row.norm_squared()).sum())
}

/// Gradient of the energy in chart coordinates, packed as
/// `df/d(Re Z) + i df/d(Im Z)`.
///
/// With `Q = (I + Z Z^H)^{-1}`, `N = A1 + Z A2 Z^H` and `S = Q N Q` the
/// energy is `tr(Q N)` and the gradient is `2 (Q Z A2 - S Z)`.
pub fn energy_gradient(spec: &EnergySpec, p: &ChartPoint) -> Result<CMatrix> {
    let space = p.space();
    spec.check(&space)?;
    let (n, m) = (space.n(), space.m());
    let z = p.matrix();
    let a1 = diag_real(&spec.eps[..n]);
    let a2 = diag_real(&spec.eps[n..]);
    let gram = CMatrix::identity(n, n) + z * z.adjoint();
    let q = gram.try_inverse().ok_or(Error::NumericalFailure { rows: n, cols: n })?;
    let nn = a1 + z * &a2 * z.adjoint();
    let s = &q * nn * &q;
    let c = &q * z * a2 - s * z;
    debug_assert_eq!(c.shape(), (n, m));
    Ok(c * crate::linalg::real(2.0))
}

/// A critical point of the energy: the coordinate plane of `subset`.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub subset: Vec<usize>,
    pub frame: Frame,
    pub value: f64,
    /// Gradient norm in the chart centred at the plane itself.
    pub gradient_norm: f64,
}

/// All `C(n+m, n)` coordinate planes, each checked critical in its own chart.
pub fn critical_points(space: GrassmannSpace, spec: &EnergySpec) -> Result<Vec<CriticalPoint>> {
    spec.check(&space)?;
    spec.require_distinct()?;
    subsets(space.dim(), space.n())
        .into_iter()
        .map(|subset| {
            let frame = Frame::coordinate(space, &subset)?;
            let value = energy(spec, &frame)?;
            let local = chart_transition(space, &frame, &subset)?;
            let local_spec = spec.permuted(&chart_order(&space, &subset));
            let gradient_norm = frobenius(&energy_gradient(&local_spec, &local)?);
            if gradient_norm >= CRITICAL_TOL {
                return Err(Error::Inconsistent(format!(
                    "coordinate plane {subset:?} has gradient norm {gradient_norm:e}"
                )));
            }
            Ok(CriticalPoint { subset, frame, value, gradient_norm })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::frame_of_chart;
    use crate::linalg::{c, real};
    use crate::sampling::SeededRng;

    fn spec(eps: &[f64]) -> EnergySpec {
        EnergySpec::new(eps.to_vec()).unwrap()
    }

    fn energy_at(s: &EnergySpec, z: &CMatrix, space: GrassmannSpace) -> f64 {
        energy(s, &frame_of_chart(&ChartPoint::new(space, z.clone()).unwrap()).unwrap()).unwrap()
    }

    fn fd_gradient(s: &EnergySpec, p: &ChartPoint, h: f64) -> CMatrix {
        let space = p.space();
        let z = p.matrix();
        CMatrix::from_fn(space.n(), space.m(), |i, j| {
            let mut part = [0.0; 2];
            for (k, dir) in [real(1.0), c(0.0, 1.0)].into_iter().enumerate() {
                let mut plus = z.clone();
                let mut minus = z.clone();
                plus[(i, j)] += dir * h;
                minus[(i, j)] -= dir * h;
                part[k] = (energy_at(s, &plus, space) - energy_at(s, &minus, space)) / (2.0 * h);
            }
            c(part[0], part[1])
        })
    }

    #[test]
    fn origin_and_coordinate_values() {
        let space = GrassmannSpace::compact(2, 3).unwrap();
        let s = spec(&[1.0, 2.5, -0.5, 4.0, 3.0]);
        assert_eq!(energy(&s, &Frame::origin(space)).unwrap(), 3.5);
        let f = Frame::coordinate(space, &[2, 4]).unwrap();
        assert_eq!(energy(&s, &f).unwrap(), 2.5);
    }

    #[test]
    fn frame_gauge_invariance_and_bounds() {
        let space = GrassmannSpace::compact(2, 2).unwrap();
        let s = spec(&[0.3, -1.0, 2.0, 0.9]);
        let mut rng = SeededRng::new(40);
        for _ in 0..20 {
            let f = rng.frame(space).unwrap();
            let d = crate::linalg::svd(&rng.gaussian_matrix(2, 2)).unwrap();
            let u = &d.u * d.v.adjoint();
            let e = energy(&s, &f).unwrap();
            assert!((e - energy(&s, &f.regauge(&u).unwrap()).unwrap()).abs() < 1e-12);
            assert!((-0.7 - 1e-12..=2.9 + 1e-12).contains(&e));
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = SeededRng::new(41);
        for (n, m) in [(1, 1), (1, 3), (2, 2), (3, 2)] {
            let space = GrassmannSpace::compact(n, m).unwrap();
            let s = EnergySpec::new((0..n + m).map(|_| rng.uniform_in(-2.0, 2.0)).collect()).unwrap();
            for _ in 0..10 {
                let p = rng.chart_point(space);
                let g = energy_gradient(&s, &p).unwrap();
                let fd = fd_gradient(&s, &p, 1e-5);
                let rel = frobenius(&(&g - &fd)) / frobenius(&g);
                assert!(rel < 1e-6, "G_{n}(C^{}) relative error {rel:e}", n + m);
            }
        }
    }

    #[test]
    fn gradient_vanishes_at_origin() {
        let space = GrassmannSpace::compact(2, 2).unwrap();
        let g = energy_gradient(&spec(&[1.0, 2.0, 3.0, 4.0]), &ChartPoint::origin(space)).unwrap();
        assert_eq!(frobenius(&g), 0.0);
    }

    #[test]
    fn critical_points_of_small_spaces() {
        let cp1 = GrassmannSpace::compact(1, 1).unwrap();
        let pts = critical_points(cp1, &spec(&[2.0, 1.0])).unwrap();
        let values: Vec<f64> = pts.iter().map(|p| p.value).collect();
        assert_eq!(values, vec![2.0, 1.0]);

        let g24 = GrassmannSpace::compact(2, 2).unwrap();
        let s = spec(&[1.0, 2.0, 4.0, 8.0]);
        let pts = critical_points(g24, &s).unwrap();
        assert_eq!(pts.len(), 6);
        let best = pts.iter().max_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
        assert_eq!(best.subset, vec![2, 3]);
        for p in &pts {
            assert_eq!(p.value, p.subset.iter().map(|&i| s.eps()[i]).sum::<f64>());
        }
    }

    #[test]
    fn degenerate_weights_are_rejected() {
        let space = GrassmannSpace::compact(1, 2).unwrap();
        let r = critical_points(space, &spec(&[1.0, 3.0, 1.0 + 1e-9]));
        assert!(matches!(r, Err(Error::DegenerateSpec { i: 0, j: 2 })));
        let r = energy(&spec(&[1.0, 2.0]), &Frame::origin(space));
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }
}
