//! Deterministic random inputs.
//!
//! The generator is PCG-XSL-RR 128/64 (`rand_pcg::Pcg64`). A `(seed, index)`
//! pair selects an independent stream: the seed is expanded with SplitMix64
//! into the 128-bit state and the index becomes the PCG stream selector, so
//! index 0 and index 1 never share output. Gaussians use the ziggurat sampler
//! from `rand_distr`, which is platform independent.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rand_pcg::Pcg64;

use crate::error::Result;
use crate::geom::{ChartPoint, Frame, TangentVector};
use crate::linalg::{c, frobenius, CMatrix};
use crate::space::GrassmannSpace;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Pcg64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, index: u64) -> Self {
        let mut sm = seed;
        let hi = splitmix64(&mut sm) as u128;
        let lo = splitmix64(&mut sm) as u128;
        Self { inner: Pcg64::new((hi << 64) | lo, index as u128) }
    }

    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    pub fn gaussian(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Standard complex Gaussian entries (independent real and imaginary parts).
    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        let data: Vec<Complex64> =
            (0..rows * cols).map(|_| c(self.gaussian(), self.gaussian())).collect();
        DMatrix::from_row_slice(rows, cols, &data)
    }

    /// Real unit vector of length `len`, uniform on the sphere.
    pub fn unit_vector(&mut self, len: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..len).map(|_| self.gaussian()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }

    /// Gaussian tangent vector rescaled to Frobenius norm `norm`.
    pub fn tangent(&mut self, space: GrassmannSpace, norm: f64) -> TangentVector {
        let b = self.gaussian_matrix(space.n(), space.m());
        let scale = norm / frobenius(&b);
        TangentVector::new(space, b.map(|z| z * scale)).expect("finite Gaussian sample")
    }

    /// Random chart point. Noncompact samples stay inside the unit ball
    /// (largest singular value at most 0.95).
    pub fn chart_point(&mut self, space: GrassmannSpace) -> ChartPoint {
        let b = self.gaussian_matrix(space.n(), space.m());
        let z = if space.is_compact() {
            b
        } else {
            let s = crate::linalg::singular_values(&b).expect("finite sample")[0];
            let target = 0.95 * self.uniform();
            b.map(|z| z * (target / s))
        };
        ChartPoint::new(space, z).expect("sample inside the chart domain")
    }

    /// Compact: Haar-distributed plane, an orthonormalized complex Gaussian
    /// frame. Noncompact: the frame of [`SeededRng::chart_point`].
    pub fn frame(&mut self, space: GrassmannSpace) -> Result<Frame> {
        if !space.is_compact() {
            return crate::geom::frame_of_chart(&self.chart_point(space));
        }
        let raw = self.gaussian_matrix(space.dim(), space.n());
        Frame::orthonormalize(space, raw)
    }
}

/// The plane drawn for `(seed, index)`; identical inputs give identical frames.
pub fn random_plane(space: GrassmannSpace, seed: u64, index: u64) -> Result<Frame> {
    SeededRng::with_stream(seed, index).frame(space)
}
