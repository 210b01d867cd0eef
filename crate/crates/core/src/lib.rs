//! Coherent-state geometry on the complex Grassmannian `G_n(C^{n+m})` and
//! its noncompact dual.

pub mod error;
pub mod geom;
pub mod kernel;
pub mod linalg;
pub mod loci;
pub mod sampling;
pub mod space;
pub mod topology;

pub use error::{Error, Result};
pub use space::{Curvature, GrassmannSpace};
