use std::fmt;

use crate::error::{Error, Result};

/// Sign of the curvature: the compact Grassmannian `G_n(C^{n+m})` or its
/// noncompact dual, the bounded domain of `n x m` matrices with `Z Z^H < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curvature {
    Compact,
    Noncompact,
}

impl Curvature {
    /// `+1` for the compact space, `-1` for the dual.
    pub fn epsilon(self) -> f64 {
        match self {
            Curvature::Compact => 1.0,
            Curvature::Noncompact => -1.0,
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curvature::Compact => "compact",
            Curvature::Noncompact => "noncompact",
        })
    }
}

impl std::str::FromStr for Curvature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" | "+1" | "1" => Ok(Curvature::Compact),
            "noncompact" | "-1" => Ok(Curvature::Noncompact),
            other => Err(Error::Precondition(format!(
                "unknown space kind {other:?} (expected compact or noncompact)"
            ))),
        }
    }
}

/// Grassmannian of `n`-planes in `C^{n+m}` (or its noncompact dual).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassmannSpace {
    n: usize,
    m: usize,
    curvature: Curvature,
}

impl GrassmannSpace {
    pub fn new(n: usize, m: usize, curvature: Curvature) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Precondition(format!(
                "plane dimension and codimension must be positive, got n={n}, m={m}"
            )));
        }
        Ok(Self { n, m, curvature })
    }

    pub fn compact(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, Curvature::Compact)
    }

    pub fn noncompact(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, Curvature::Noncompact)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Ambient dimension `n + m`.
    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    /// Symmetric rank `min(n, m)`.
    pub fn rank(&self) -> usize {
        self.n.min(self.m)
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn epsilon(&self) -> f64 {
        self.curvature.epsilon()
    }

    pub fn is_compact(&self) -> bool {
        self.curvature == Curvature::Compact
    }

    /// Diagonal of the form preserved by the isometry group: all ones for the
    /// compact space, `diag(I_n, -I_m)` for the dual.
    pub fn form_sign(&self, row: usize) -> f64 {
        if self.is_compact() || row < self.n {
            1.0
        } else {
            -1.0
        }
    }

    pub(crate) fn require_compact(&self, op: &'static str) -> Result<()> {
        if self.is_compact() {
            Ok(())
        } else {
            Err(Error::UnsupportedSpace { op, required: "compact" })
        }
    }
}

impl fmt::Display for GrassmannSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.curvature {
            Curvature::Compact => write!(f, "G_{}(C^{})", self.n, self.n + self.m),
            Curvature::Noncompact => write!(f, "SU({},{})/S(U({})xU({}))", self.n, self.m, self.n, self.m),
        }
    }
}
