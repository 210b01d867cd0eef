use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geom::Frame;

pub const DEFAULT_ANGLE_TOL: f64 = 1e-6;

fn angles_with_origin(f: &Frame) -> Result<Vec<f64>> {
    f.space().require_compact("conjugate strata")?;
    Frame::origin(f.space()).principal_angles(f)
}

/// Stratum `C^W_0`: more vanishing angles with `O` than the `max(0, n - m)`
/// forced by dimension, or some angle equal to `π/2`.
pub fn conjugate_stratum_w(f: &Frame, tol: f64) -> Result<bool> {
    let space = f.space();
    let angles = angles_with_origin(f)?;
    let forced = space.n().saturating_sub(space.m());
    let zeros = angles.iter().filter(|&&a| a < tol).count();
    let right = angles.iter().any(|&a| a > FRAC_PI_2 - tol);
    Ok(zeros > forced || right)
}

/// Stratum `C^I_0`: two of the `min(n, m)` nontrivial angles with `O`
/// coincide. The `max(0, n - m)` forced zero angles are left out.
pub fn conjugate_stratum_i(f: &Frame, tol: f64) -> Result<bool> {
    let space = f.space();
    let angles = angles_with_origin(f)?;
    let forced = space.n().saturating_sub(space.m());
    Ok(angles[forced..].windows(2).any(|w| w[1] - w[0] < tol))
}

/// Whether all principal (compact) or hyperbolic (noncompact) angles
/// between the two planes agree within `tol`.
pub fn isoclinic_test(f1: &Frame, f2: &Frame, tol: f64) -> Result<bool> {
    if f1.space() != f2.space() {
        return Err(Error::Precondition("frames belong to different spaces".into()));
    }
    let angles = if f1.space().is_compact() { f1.principal_angles(f2)? } else { f1.hyperbolic_angles(f2)? };
    let (lo, hi) = (angles[0], angles[angles.len() - 1]);
    Ok(hi - lo < tol)
}
