//! Fixed-step RK4 integration of the chart geodesic equation
//!
//! ```text
//! Z'' = 2 eps Z' Z^H (I + eps Z Z^H)^{-1} Z',   Z(0) = 0,  Z'(0) = B
//! ```
//!
//! used as an oracle for the closed-form exponential.

use super::point::{ChartPoint, TangentVector};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, real, CMatrix};

pub const MIN_STEPS: usize = 100;

/// Entry magnitude taken as a blow-up of the chart.
pub const BLOW_UP: f64 = 1e8;

struct Rhs {
    eps: f64,
}

impl Rhs {
    fn accel(&self, z: &CMatrix, v: &CMatrix) -> Option<CMatrix> {
        let zh = z.adjoint();
        let mut m = z * &zh;
        m.scale_mut(self.eps);
        for i in 0..m.nrows() {
            m[(i, i)] += real(1.0);
        }
        // I + eps Z Z^H is positive definite inside the chart
        let w = match m.clone().cholesky() {
            Some(ch) => ch.solve(v),
            None => m.lu().solve(v)?,
        };
        let mut out = v * (zh * w);
        out.scale_mut(2.0 * self.eps);
        Some(out)
    }
}

fn axpy(y: &mut CMatrix, a: f64, x: &CMatrix) {
    y.zip_apply(x, |yi, xi| *yi += xi * a);
}

/// `Z(t)` along the geodesic with initial velocity `B`, integrated in
/// `steps` equal RK4 steps.
pub fn geodesic_ode(b: &TangentVector, t: f64, steps: usize) -> Result<ChartPoint> {
    if steps < MIN_STEPS {
        return Err(Error::Precondition(format!("need at least {MIN_STEPS} steps, got {steps}")));
    }
    if !t.is_finite() {
        return Err(Error::Precondition("integration time must be finite".into()));
    }
    let space = b.space();
    let rhs = Rhs { eps: space.epsilon() };
    let h = t / steps as f64;
    let left = |step: usize| Error::LeftChart { t: step as f64 * h, step };
    let shifted = |base: &CMatrix, d: &CMatrix, s: f64| {
        let mut out = base.clone();
        axpy(&mut out, s, d);
        out
    };

    let mut z = CMatrix::zeros(space.n(), space.m());
    let mut v = b.matrix().clone();
    for step in 0..steps {
        let a1 = rhs.accel(&z, &v).ok_or_else(|| left(step))?;
        let v2 = shifted(&v, &a1, 0.5 * h);
        let a2 = rhs.accel(&shifted(&z, &v, 0.5 * h), &v2).ok_or_else(|| left(step))?;
        let v3 = shifted(&v, &a2, 0.5 * h);
        let a3 = rhs.accel(&shifted(&z, &v2, 0.5 * h), &v3).ok_or_else(|| left(step))?;
        let v4 = shifted(&v, &a3, h);
        let a4 = rhs.accel(&shifted(&z, &v3, h), &v4).ok_or_else(|| left(step))?;

        let (sixth, third) = (h / 6.0, h / 3.0);
        axpy(&mut z, sixth, &v);
        axpy(&mut z, third, &v2);
        axpy(&mut z, third, &v3);
        axpy(&mut z, sixth, &v4);
        axpy(&mut v, sixth, &a1);
        axpy(&mut v, third, &a2);
        axpy(&mut v, third, &a3);
        axpy(&mut v, sixth, &a4);

        let size = max_abs(&z).max(max_abs(&v));
        if !(size <= BLOW_UP) {
            return Err(left(step + 1));
        }
    }
    ChartPoint::new(space, z).map_err(|_| left(steps))
}
