use thiserror::Error;

/// Errors raised by the geometry routines.
///
/// Several variants carry geometric meaning rather than signalling a bug:
/// [`Error::OnPolarDivisor`] and [`Error::DiastasisUndefined`] both say that a
/// plane lies on the cut locus of the reference point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("SVD did not converge for a {rows}x{cols} matrix")]
    NumericalFailure { rows: usize, cols: usize },

    #[error("spectral function undefined at singular value {value}")]
    Singularity { value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error(
        "singular value {singular_value} of the tangent vector hits a pole of tan; \
         the endpoint is not in the chart, use exp0_frame"
    )]
    ConjugateToChart { singular_value: f64 },

    #[error("plane lies on the polar divisor of the chart origin (smallest top-block singular value {min_singular:e})")]
    OnPolarDivisor { min_singular: f64 },

    #[error("selected rows do not form an invertible block (smallest singular value {min_singular:e})")]
    WrongChart { min_singular: f64 },

    #[error("geodesic left the chart at t = {t} (step {step})")]
    LeftChart { t: f64, step: usize },

    #[error("operation {op} is only defined on the {required} space")]
    UnsupportedSpace { op: &'static str, required: &'static str },

    #[error("diastasis undefined: overlap modulus {overlap:e} vanishes (second point on the polar divisor of the first)")]
    DiastasisUndefined { overlap: f64 },

    #[error("energy coefficients {i} and {j} coincide; the energy function is not Morse")]
    DegenerateSpec { i: usize, j: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Overflow(String),

    #[error("enumeration of {count} items exceeds the limit of {limit}")]
    TooLarge { count: u128, limit: u128 },
}

impl Error {
    /// Short machine-readable tag, used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NumericalFailure { .. } => "numerical-failure",
            Error::Singularity { .. } => "singularity",
            Error::Precondition(_) => "precondition",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Domain(_) => "domain",
            Error::ConjugateToChart { .. } => "conjugate-to-chart",
            Error::OnPolarDivisor { .. } => "on-polar-divisor",
            Error::WrongChart { .. } => "wrong-chart",
            Error::LeftChart { .. } => "left-chart",
            Error::UnsupportedSpace { .. } => "unsupported-space",
            Error::DiastasisUndefined { .. } => "diastasis-undefined",
            Error::DegenerateSpec { .. } => "degenerate-spec",
            Error::Inconsistent(_) => "internal-consistency",
            Error::Overflow(_) => "overflow",
            Error::TooLarge { .. } => "too-large",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
