use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{permute_rows, Frame};
use crate::linalg::CMatrix;

/// Size-`n` subsets of `0..dim` in lexicographic order.
pub fn subsets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    (0..dim).combinations(n).collect()
}

/// Homogeneous Plücker coordinates of an `n`-plane in `C^dim`: the `n x n`
/// minors of a frame, indexed by row subsets in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerVector {
    n: usize,
    dim: usize,
    components: Vec<Complex64>,
}

impl PluckerVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Hermitian inner product, antilinear in `self`.
    pub fn inner(&self, other: &PluckerVector) -> Complex64 {
        self.components.iter().zip(&other.components).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Coordinate of an increasing subset.
    pub fn get(&self, subset: &[usize]) -> Option<Complex64> {
        subset_rank(self.dim, subset).map(|k| self.components[k])
    }

    /// Coordinate of an arbitrary index sequence: zero on repeated indices,
    /// otherwise the sign of the sorting permutation times the sorted coordinate.
    pub fn signed(&self, seq: &[usize]) -> Complex64 {
        let mut sorted = seq.to_vec();
        let mut sign = 1.0;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Complex64::new(0.0, 0.0);
        }
        self.get(&sorted).map_or(Complex64::new(0.0, 0.0), |p| p * sign)
    }

    /// Largest modulus among all quadratic Plücker relations
    /// `sum_k (-1)^k p(I + j_k) p(J - j_k)` over `(n-1)`-subsets `I` and
    /// `(n+1)`-subsets `J`, relative to `|p|^2`.
    pub fn relations_residual(&self) -> f64 {
        let (n, dim) = (self.n, self.dim);
        if n == 0 || n >= dim {
            return 0.0;
        }
        let scale = self.norm().powi(2).max(f64::MIN_POSITIVE);
        let mut worst: f64 = 0.0;
        for i_set in (0..dim).combinations(n - 1) {
            for j_set in (0..dim).combinations(n + 1) {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &j) in j_set.iter().enumerate() {
                    let mut left = i_set.clone();
                    left.push(j);
                    let right: Vec<usize> = j_set.iter().copied().filter(|&x| x != j).collect();
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    acc += self.signed(&left) * self.get(&right).unwrap_or_default() * sign;
                }
                worst = worst.max(acc.norm() / scale);
            }
        }
        worst
    }
}

/// Position of an increasing subset in the lexicographic enumeration.
pub fn subset_rank(dim: usize, subset: &[usize]) -> Option<usize> {
    let n = subset.len();
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&s| s >= dim) {
        return None;
    }
    // count the subsets that precede `subset`
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (pos, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += binomial(dim - skipped - 1, n - pos - 1);
        }
        prev = s + 1;
    }
    Some(rank)
}

fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1))
}

/// Minors of the rows of `f` for every size-`n` row subset.
pub fn plucker_of_matrix(f: &CMatrix) -> PluckerVector {
    let (dim, n) = f.shape();
    let components = (0..dim)
        .combinations(n)
        .map(|rows| permute_rows(f, &rows).determinant())
        .collect();
    PluckerVector { n, dim, components }
}

/// Plücker embedding of a compact plane.
pub fn plucker_embed(f: &Frame) -> Result<PluckerVector> {
    f.space().require_compact("plucker_embed")?;
    Ok(plucker_of_matrix(f.matrix()))
}

/// `<P(F1), P(F2)> / (|P(F1)| |P(F2)|)`, computed entirely in Plücker space.
pub fn plucker_overlap_oracle(f1: &Frame, f2: &Frame) -> Result<Complex64> {
    if f1.space() != f2.space() {
        return Err(Error::Precondition("frames belong to different spaces".into()));
    }
    let p1 = plucker_embed(f1)?;
    let p2 = plucker_embed(f2)?;
    Ok(p1.inner(&p2) / (p1.norm() * p2.norm()))
}

/// `p12 p34 - p13 p24 + p14 p23` for a plane of `G_2(C^4)`.
pub fn g24_relation(p: &PluckerVector) -> Result<Complex64> {
    if p.n != 2 || p.dim != 4 {
        return Err(Error::Precondition("three-term relation is specific to G_2(C^4)".into()));
    }
    let c = &p.components; // 12 13 14 23 24 34
    Ok(c[0] * c[5] - c[1] * c[4] + c[2] * c[3])
}
