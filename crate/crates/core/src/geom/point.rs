use crate::error::{Error, Result};
use crate::linalg::{is_finite, singular_values, CMatrix};
use crate::space::GrassmannSpace;

fn check_shape(space: &GrassmannSpace, m: &CMatrix, what: &str) -> Result<()> {
    if m.shape() != (space.n(), space.m()) {
        return Err(Error::DimensionMismatch {
            expected: format!("{what} of shape {}x{}", space.n(), space.m()),
            got: format!("{}x{}", m.nrows(), m.ncols()),
        });
    }
    if !is_finite(m) {
        return Err(Error::Precondition(format!("{what} has non-finite entries")));
    }
    Ok(())
}

/// Point of the chart around the origin plane `O`: the plane spanned by the
/// columns of `[I_n ; Z^H]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    space: GrassmannSpace,
    z: CMatrix,
}

impl ChartPoint {
    pub fn new(space: GrassmannSpace, z: CMatrix) -> Result<Self> {
        check_shape(&space, &z, "chart point")?;
        if !space.is_compact() {
            let s = singular_values(&z)?[0];
            if s >= 1.0 {
                return Err(Error::Domain(format!(
                    "noncompact chart point needs all singular values < 1, largest is {s}"
                )));
            }
        }
        Ok(Self { space, z })
    }

    pub fn origin(space: GrassmannSpace) -> Self {
        Self { space, z: CMatrix::zeros(space.n(), space.m()) }
    }

    pub fn space(&self) -> GrassmannSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.z
    }

    pub fn into_matrix(self) -> CMatrix {
        self.z
    }
}

/// Tangent vector at the origin in normal coordinates; its Frobenius norm is
/// the arc length of the geodesic segment `t in [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    space: GrassmannSpace,
    b: CMatrix,
}

impl TangentVector {
    pub fn new(space: GrassmannSpace, b: CMatrix) -> Result<Self> {
        check_shape(&space, &b, "tangent vector")?;
        Ok(Self { space, b })
    }

    pub fn zero(space: GrassmannSpace) -> Self {
        Self { space, b: CMatrix::zeros(space.n(), space.m()) }
    }

    pub fn space(&self) -> GrassmannSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.b
    }

    pub fn into_matrix(self) -> CMatrix {
        self.b
    }

    pub fn norm(&self) -> f64 {
        crate::linalg::frobenius(&self.b)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { space: self.space, b: self.b.map(|z| z * t) }
    }
}
