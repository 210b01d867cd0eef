use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geom::{chart_of_frame, ChartPoint, Frame};
use crate::linalg::{gram_deviation, singular_values, ORTHONORMAL_TOL};

pub const DEFAULT_CUT_TOL: f64 = 1e-9;

/// Both readings of "the plane meets `O^⊥`".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutLocusReport {
    /// `|det(F_O^H F)|`, the modulus of the normalized overlap with the origin.
    pub overlap: f64,
    /// Largest principal angle with the origin plane.
    pub max_angle: f64,
    pub on_cut_locus: bool,
}

fn require_compact_orthonormal(f: &Frame, op: &'static str) -> Result<()> {
    f.space().require_compact(op)?;
    let dev = gram_deviation(f.matrix());
    if dev > ORTHONORMAL_TOL {
        return Err(Error::Precondition(format!("frame is not orthonormal (Gram deviation {dev:e})")));
    }
    Ok(())
}

/// Cut-locus membership of the plane of `f` with respect to the origin.
///
/// The overlap test `|det F_top| < tol` and the angle test
/// `max angle > π/2 - sqrt(tol)` are both evaluated and must agree; a plane
/// passing only one of them is reported as an internal inconsistency.
pub fn cut_locus_report(f: &Frame, tol: f64) -> Result<CutLocusReport> {
    let (report, by_angle) = evaluate(f, tol)?;
    if report.on_cut_locus != by_angle {
        return Err(Error::Inconsistent(format!(
            "overlap {:e} and largest angle {} disagree on cut-locus membership at tolerance {tol:e}",
            report.overlap, report.max_angle
        )));
    }
    Ok(report)
}

fn evaluate(f: &Frame, tol: f64) -> Result<(CutLocusReport, bool)> {
    require_compact_orthonormal(f, "cut_locus_test")?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Precondition(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let top = f.top();
    let overlap = top.determinant().norm();
    let cosines = singular_values(&top)?;
    let min_cos = cosines.last().copied().unwrap_or(1.0).clamp(0.0, 1.0);
    let max_angle = min_cos.acos();
    let by_angle = max_angle > FRAC_PI_2 - tol.sqrt();
    Ok((CutLocusReport { overlap, max_angle, on_cut_locus: overlap < tol }, by_angle))
}

pub fn cut_locus_test(f: &Frame, tol: f64) -> Result<bool> {
    Ok(cut_locus_report(f, tol)?.on_cut_locus)
}

/// Which side of the decomposition `G = V_0 ⊔ Σ_0` a plane falls on.
#[derive(Debug, Clone, PartialEq)]
pub enum DivisorClass {
    Chart(ChartPoint),
    PolarDivisor { overlap: f64 },
    /// Overlap in `[tol, 10 tol]`: too close to call.
    NearDivisor { overlap: f64, max_angle: f64 },
}

pub fn disjoint_union_check(f: &Frame, tol: f64) -> Result<DivisorClass> {
    let (report, _) = evaluate(f, tol)?;
    if (tol..=10.0 * tol).contains(&report.overlap) {
        return Ok(DivisorClass::NearDivisor { overlap: report.overlap, max_angle: report.max_angle });
    }
    let report = cut_locus_report(f, tol)?;
    if report.on_cut_locus {
        return Ok(DivisorClass::PolarDivisor { overlap: report.overlap });
    }
    match chart_of_frame(f) {
        Ok(p) => Ok(DivisorClass::Chart(p)),
        Err(Error::OnPolarDivisor { min_singular }) => Err(Error::Inconsistent(format!(
            "overlap {:e} is above tolerance but the chart rejects the plane (top singular value {min_singular:e})",
            report.overlap
        ))),
        Err(e) => Err(e),
    }
}

/// Whether the largest principal angle is within `slack` of a right angle.
pub fn has_right_angle(f: &Frame, slack: f64) -> Result<bool> {
    let angles = Frame::origin(f.space()).principal_angles(f)?;
    Ok(angles.last().is_some_and(|&a| a > FRAC_PI_2 - slack))
}
