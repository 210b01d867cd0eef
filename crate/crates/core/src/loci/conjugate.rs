use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{exp0_frame, TangentVector};
use crate::linalg::{c, frobenius, real, singular_values, CMatrix};
use crate::space::GrassmannSpace;

pub const DEFAULT_FD_STEP: f64 = 1e-5;
pub const DEFAULT_CONJUGATE_TOL: f64 = 1e-3;

/// Relative gap under which two predicted times are merged.
const COALESCE_REL: f64 = 1e-12;

/// Unit direction `h` in the maximal flat, `r = min(n, m)` components.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanVector {
    h: Vec<f64>,
}

impl CartanVector {
    /// Accepts `h` with `|h|^2 = 1` within 1e-9.
    pub fn new(h: Vec<f64>) -> Result<Self> {
        let norm2: f64 = h.iter().map(|x| x * x).sum();
        if h.iter().any(|x| !x.is_finite()) || (norm2 - 1.0).abs() > 1e-9 {
            return Err(Error::Precondition(format!("Cartan vector must have unit length, |h|^2 = {norm2}")));
        }
        Ok(Self { h })
    }

    /// Rescales a nonzero `h` to unit length.
    pub fn normalized(h: Vec<f64>) -> Result<Self> {
        let norm = h.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Precondition("Cartan vector must be nonzero and finite".into()));
        }
        Ok(Self { h: h.into_iter().map(|x| x / norm).collect() })
    }

    pub fn components(&self) -> &[f64] {
        &self.h
    }

    fn check(&self, space: &GrassmannSpace) -> Result<()> {
        if self.h.len() != space.rank() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} Cartan components", space.rank()),
                got: format!("{}", self.h.len()),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Roots `e_p ± e_q`: `t = λπ / |h_p ± h_q|`, multiplicity 2.
    T1,
    /// Roots `2 e_p`: `t = λπ / (2|h_p|)`, multiplicity 1.
    T2,
    /// Roots `e_p` (only when `n ≠ m`): `t = λπ / |h_p|`, multiplicity `2|m - n|`.
    T3,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3 => "T3",
        }
    }
}

/// Sign of the T1 combination `h_p ± h_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Plus,
    Minus,
}

/// One family formula producing a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct Contribution {
    pub family: Family,
    /// `[p, q]` for T1, `[p]` otherwise; 0-based.
    pub indices: Vec<usize>,
    pub sign: Option<RootSign>,
    pub lambda: u32,
    pub multiplicity: u32,
}

/// A predicted conjugate parameter with all formulas that produce it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateTime {
    pub t: f64,
    pub multiplicity: u32,
    pub contributions: Vec<Contribution>,
}

impl ConjugateTime {
    /// Family of the first contribution (families ordered T1 < T2 < T3).
    pub fn family(&self) -> Family {
        self.contributions[0].family
    }
}

/// Conjugate times of the geodesic `t -> Exp_o(t H)` up to `t_max`.
///
/// Formulas with a vanishing denominator contribute nothing. The noncompact
/// dual has no conjugate points and yields an empty list.
pub fn tangent_conjugate_times(space: GrassmannSpace, h: &CartanVector, t_max: f64) -> Result<Vec<ConjugateTime>> {
    h.check(&space)?;
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Precondition(format!("t_max must be positive and finite, got {t_max}")));
    }
    if !space.is_compact() {
        return Ok(Vec::new());
    }
    let hv = h.components();
    let r = hv.len();
    let t3_mult = 2 * space.n().abs_diff(space.m()) as u32;
    let mut raw: Vec<(f64, Contribution)> = Vec::new();
    let mut push_series = |denominator: f64, proto: Contribution| {
        if denominator == 0.0 {
            return;
        }
        let mut lambda = 1u32;
        loop {
            let t = lambda as f64 * PI / denominator;
            if t > t_max {
                break;
            }
            raw.push((t, Contribution { lambda, ..proto.clone() }));
            lambda += 1;
        }
    };
    for p in 0..r {
        for q in p + 1..r {
            for (sign, den) in [(RootSign::Plus, hv[p] + hv[q]), (RootSign::Minus, hv[p] - hv[q])] {
                let proto =
                    Contribution { family: Family::T1, indices: vec![p, q], sign: Some(sign), lambda: 0, multiplicity: 2 };
                push_series(den.abs(), proto);
            }
        }
        let proto = Contribution { family: Family::T2, indices: vec![p], sign: None, lambda: 0, multiplicity: 1 };
        push_series(2.0 * hv[p].abs(), proto);
        if t3_mult > 0 {
            let proto =
                Contribution { family: Family::T3, indices: vec![p], sign: None, lambda: 0, multiplicity: t3_mult };
            push_series(hv[p].abs(), proto);
        }
    }
    raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.family.cmp(&b.1.family)));
    let mut out: Vec<ConjugateTime> = Vec::new();
    for (t, contribution) in raw {
        match out.last_mut() {
            Some(last) if (t - last.t).abs() <= COALESCE_REL * t => {
                last.multiplicity += contribution.multiplicity;
                last.contributions.push(contribution);
            }
            _ => out.push(ConjugateTime { t, multiplicity: contribution.multiplicity, contributions: vec![contribution] }),
        }
    }
    Ok(out)
}

/// The tangent vector `sum_i h_i D_{i, n+i}`: `B_ii = h_i`, zero elsewhere.
pub fn cartan_to_tangent(space: GrassmannSpace, h: &CartanVector) -> Result<TangentVector> {
    h.check(&space)?;
    let mut b = CMatrix::zeros(space.n(), space.m());
    for (i, &x) in h.components().iter().enumerate() {
        b[(i, i)] = real(x);
    }
    TangentVector::new(space, b)
}

/// Singular values of the real Jacobian of `B' -> F F^H` at `B' = t B`,
/// by central differences over the `2nm` real coordinates, in decreasing order.
pub fn dexp_singular_values(b: &TangentVector, t: f64, fd_step: f64) -> Result<Vec<f64>> {
    if !(1e-7..=1e-3).contains(&fd_step) {
        return Err(Error::Precondition(format!("finite-difference step {fd_step} outside [1e-7, 1e-3]")));
    }
    if !t.is_finite() {
        return Err(Error::Precondition(format!("parameter t must be finite, got {t}")));
    }
    let space = b.space();
    let (n, m, dim) = (space.n(), space.m(), space.dim());
    let base = b.matrix().map(|z| z * t);
    let coords = 2 * n * m;
    let mut jac = CMatrix::zeros(2 * dim * dim, coords);
    for k in 0..coords {
        let (i, j) = ((k / 2) / m, (k / 2) % m);
        let dir = if k % 2 == 0 { real(fd_step) } else { c(0.0, fd_step) };
        let project = |sign: f64| -> Result<CMatrix> {
            let mut bp = base.clone();
            bp[(i, j)] += dir * sign;
            Ok(exp0_frame(&TangentVector::new(space, bp)?)?.projection())
        };
        let diff = (project(1.0)? - project(-1.0)?) / real(2.0 * fd_step);
        for (row, z) in diff.iter().enumerate() {
            jac[(2 * row, k)] = real(z.re);
            jac[(2 * row + 1, k)] = real(z.im);
        }
    }
    singular_values(&jac)
}

/// Smallest singular value of the Jacobian of the exponential map read on
/// projections, divided by the largest.
pub fn dexp_min_singular(b: &TangentVector, t: f64, fd_step: f64) -> Result<f64> {
    let s = dexp_singular_values(b, t, fd_step)?;
    let largest = s[0];
    if !(largest > 0.0) {
        return Err(Error::NumericalFailure { rows: 2 * b.space().dim().pow(2), cols: s.len() });
    }
    Ok(s[s.len() - 1] / largest)
}

/// Whether `Exp_o(t B)` is conjugate to the origin along `B`.
pub fn is_conjugate(b: &TangentVector, t: f64, tol: f64) -> Result<bool> {
    if frobenius(b.matrix()) == 0.0 {
        return Err(Error::Precondition("direction of a zero tangent vector is undefined".into()));
    }
    Ok(dexp_min_singular(b, t, DEFAULT_FD_STEP)? < tol)
}
