use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{ChartPoint, Frame};
use crate::linalg::{real, CMatrix};

/// Overlaps with modulus below this are treated as zero by [`diastasis`].
pub const ZERO_OVERLAP: f64 = 1e-14;

/// Kernel value of two coherent states together with its normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapValue {
    pub raw: Complex64,
    /// `raw / sqrt(K(Z1,Z1) K(Z2,Z2))`, modulus in `[0, 1]`.
    pub normalized: Complex64,
}

fn same_space(a: &ChartPoint, b: &ChartPoint) -> Result<()> {
    if a.space() != b.space() {
        return Err(Error::Precondition(format!(
            "points belong to different spaces ({} and {})",
            a.space(),
            b.space()
        )));
    }
    Ok(())
}

/// Reproducing kernel of the determinant representation:
/// `det(I + Z1 Z2^H)` on the compact space, `det(I - Z1 Z2^H)^{-1}` on the dual.
pub fn kernel(z1: &ChartPoint, z2: &ChartPoint) -> Result<Complex64> {
    same_space(z1, z2)?;
    let space = z1.space();
    let n = space.n();
    let prod = z1.matrix() * z2.matrix().adjoint();
    if space.is_compact() {
        Ok((CMatrix::identity(n, n) + prod).determinant())
    } else {
        let d = (CMatrix::identity(n, n) - prod).determinant();
        Ok(real(1.0) / d)
    }
}

pub fn normalized_overlap(z1: &ChartPoint, z2: &ChartPoint) -> Result<OverlapValue> {
    let raw = kernel(z1, z2)?;
    let k11 = kernel(z1, z1)?.re;
    let k22 = kernel(z2, z2)?.re;
    Ok(OverlapValue { raw, normalized: raw / (k11 * k22).sqrt() })
}

/// Elliptic Cayley distance `arccos |(e_Z1, e_Z2)|` between the images in
/// projective space; compact space only.
pub fn cayley_distance(z1: &ChartPoint, z2: &ChartPoint) -> Result<f64> {
    z1.space().require_compact("cayley_distance")?;
    let ov = normalized_overlap(z1, z2)?;
    Ok(ov.normalized.norm().clamp(0.0, 1.0).acos())
}

/// Cayley distance between planes given by orthonormal frames, `arccos |det(F1^H F2)|`.
/// Unlike [`cayley_distance`] this reaches the polar divisor.
pub fn cayley_distance_frames(f1: &Frame, f2: &Frame) -> Result<f64> {
    f1.space().require_compact("cayley_distance")?;
    let d = (f1.matrix().adjoint() * f2.matrix()).determinant();
    Ok(d.norm().clamp(0.0, 1.0).acos())
}

/// Calabi's diastasis `-2 log |normalized overlap|`.
pub fn diastasis(z1: &ChartPoint, z2: &ChartPoint) -> Result<f64> {
    let ov = normalized_overlap(z1, z2)?;
    let modulus = ov.normalized.norm();
    if modulus < ZERO_OVERLAP {
        return Err(Error::DiastasisUndefined { overlap: modulus });
    }
    Ok((-2.0 * modulus.min(1.0).ln()).max(0.0))
}
