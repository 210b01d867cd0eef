use crate::error::{Error, Result};
use crate::geom::Frame;
use crate::linalg::{gram_deviation, rank_tol, real, CMatrix, ORTHONORMAL_TOL};
use crate::space::GrassmannSpace;

/// Complete flag `W_1 ⊂ W_2 ⊂ ... ⊂ C^{n+m}`, `W_p` spanned by the first `p`
/// columns of a unitary basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Flag {
    basis: CMatrix,
}

impl Flag {
    pub fn new(basis: CMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::Precondition(format!("flag basis must be square, got {:?}", basis.shape())));
        }
        let dev = gram_deviation(&basis);
        if dev > ORTHONORMAL_TOL {
            return Err(Error::Precondition(format!("flag basis is not orthonormal (Gram deviation {dev:e})")));
        }
        Ok(Self { basis })
    }

    /// `W_p = span(e_1, ..., e_p)`; in particular `W_n = O`.
    pub fn standard(dim: usize) -> Self {
        Self { basis: CMatrix::identity(dim, dim) }
    }

    /// `e_{n+1}, ..., e_{n+m}, e_1, ..., e_n`, so that `W_m = O^⊥`.
    pub fn polar_adapted(space: &GrassmannSpace) -> Self {
        let (n, dim) = (space.n(), space.dim());
        let order: Vec<usize> = (n..dim).chain(0..n).collect();
        let mut basis = CMatrix::zeros(dim, dim);
        for (col, &row) in order.iter().enumerate() {
            basis[(row, col)] = real(1.0);
        }
        Self { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }
}

/// `dim(X ∩ W_p)` for `p = 1..n+m`, from `n + p - rank [F | W_p]`.
pub fn schubert_dims(f: &Frame, flag: &Flag, tol: f64) -> Result<Vec<usize>> {
    let (dim, n) = f.matrix().shape();
    if flag.dim() != dim {
        return Err(Error::DimensionMismatch { expected: format!("flag in C^{dim}"), got: format!("C^{}", flag.dim()) });
    }
    let dev = gram_deviation(f.matrix());
    if dev > ORTHONORMAL_TOL {
        return Err(Error::Precondition(format!("frame is not orthonormal (Gram deviation {dev:e})")));
    }
    let mut joint = CMatrix::zeros(dim, n + dim);
    joint.view_mut((0, 0), (dim, n)).copy_from(f.matrix());
    (1..=dim)
        .map(|p| {
            joint.view_mut((0, n + p - 1), (dim, 1)).copy_from(&flag.basis.column(p - 1));
            let rank = rank_tol(&joint.columns(0, n + p).into_owned(), tol)?;
            Ok(n + p - rank)
        })
        .collect()
}

/// Schubert symbol `0 <= ω(1) <= ... <= ω(n) <= m`.
///
/// Positions `i` are 1-based as in `σ(i) = ω(i) + i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchubertSymbol {
    omega: Vec<usize>,
    m: usize,
}

impl SchubertSymbol {
    pub fn new(omega: Vec<usize>, m: usize) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::Precondition("Schubert symbol needs at least one entry".into()));
        }
        if omega.windows(2).any(|w| w[0] > w[1]) || omega.iter().any(|&w| w > m) {
            return Err(Error::Precondition(format!("{omega:?} is not nondecreasing in [0, {m}]")));
        }
        Ok(Self { omega, m })
    }

    /// `ω^p_l = (p - l, ..., p - l, m, ..., m)` with `l` leading entries.
    pub fn omega_pl(n: usize, m: usize, p: usize, l: usize) -> Result<Self> {
        if l == 0 || l > n || p < l || p - l > m {
            return Err(Error::Precondition(format!("no symbol ω^{p}_{l} for n = {n}, m = {m}")));
        }
        let omega = std::iter::repeat_n(p - l, l).chain(std::iter::repeat_n(m, n - l)).collect();
        Self::new(omega, m)
    }

    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `σ(i)` for `i = 1..n`.
    pub fn sigma(&self) -> Vec<usize> {
        self.omega.iter().enumerate().map(|(k, &w)| w + k + 1).collect()
    }

    /// Jump positions: `i = n` and every `i` with `ω(i) < ω(i+1)`.
    pub fn jumps(&self) -> Vec<usize> {
        let n = self.n();
        (1..=n).filter(|&i| i == n || self.omega[i - 1] < self.omega[i]).collect()
    }

    /// Complex dimension of the cell, `Σ ω(i)`.
    pub fn cell_dim(&self) -> usize {
        self.omega.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_z: bool,
    pub generic: bool,
}

/// Membership of `X` in `Z(ω)`, and whether it lies in the open cell `Z'(ω)`.
pub fn schubert_membership(f: &Frame, symbol: &SchubertSymbol, flag: &Flag, tol: f64) -> Result<Membership> {
    let space = f.space();
    if symbol.n() != space.n() || symbol.m() != space.m() {
        return Err(Error::DimensionMismatch {
            expected: format!("symbol for n = {}, m = {}", space.n(), space.m()),
            got: format!("n = {}, m = {}", symbol.n(), symbol.m()),
        });
    }
    let dims = schubert_dims(f, flag, tol)?;
    let sigma = symbol.sigma();
    let in_z = sigma.iter().enumerate().all(|(k, &s)| dims[s - 1] > k);
    let generic = in_z && symbol.jumps().iter().all(|&i| dims[sigma[i - 1] - 1] == i);
    Ok(Membership { in_z, generic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_RANK_TOL;
    use crate::loci::cut_locus_test;
    use crate::sampling::SeededRng;

    #[test]
    fn symbol_bookkeeping() {
        let s = SchubertSymbol::omega_pl(3, 2, 2, 1).unwrap();
        assert_eq!(s.omega(), &[1, 2, 2]);
        assert_eq!(s.sigma(), vec![2, 4, 5]);
        assert_eq!(s.jumps(), vec![1, 3]);
        assert_eq!(s.cell_dim(), 5);
        assert!(SchubertSymbol::new(vec![2, 1], 2).is_err());
        assert!(SchubertSymbol::new(vec![0, 3], 2).is_err());
    }

    #[test]
    fn origin_against_standard_flag() {
        let space = GrassmannSpace::compact(2, 3).unwrap();
        let dims = schubert_dims(&Frame::origin(space), &Flag::standard(5), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 2, 2]);
        let v = SchubertSymbol::omega_pl(2, 3, 2, 1).unwrap();
        assert!(schubert_membership(&Frame::origin(space), &v, &Flag::standard(5), DEFAULT_RANK_TOL).unwrap().in_z);
    }

    #[test]
    fn generic_plane_meets_flag_minimally() {
        let space = GrassmannSpace::compact(2, 3).unwrap();
        let mut rng = SeededRng::new(60);
        for _ in 0..10 {
            let f = rng.frame(space).unwrap();
            let dims = schubert_dims(&f, &Flag::standard(5), DEFAULT_RANK_TOL).unwrap();
            assert_eq!(dims, (1..=5).map(|p: usize| p.saturating_sub(3)).collect::<Vec<_>>());
            let top = SchubertSymbol::new(vec![3, 3], 3).unwrap();
            let m = schubert_membership(&f, &top, &Flag::standard(5), DEFAULT_RANK_TOL).unwrap();
            assert!(m.in_z && m.generic);
        }
    }

    #[test]
    fn forced_first_vector() {
        let space = GrassmannSpace::compact(2, 2).unwrap();
        let mut raw = SeededRng::new(61).gaussian_matrix(4, 2);
        raw.column_mut(0).fill(real(0.0));
        raw[(0, 0)] = real(1.0);
        let f = Frame::orthonormalize(space, raw).unwrap();
        assert_eq!(schubert_dims(&f, &Flag::standard(4), DEFAULT_RANK_TOL).unwrap()[0], 1);
    }

    #[test]
    fn cut_locus_is_first_polar_schubert_variety() {
        let space = GrassmannSpace::compact(2, 2).unwrap();
        let flag = Flag::polar_adapted(&space);
        let v = SchubertSymbol::omega_pl(2, 2, 2, 1).unwrap();
        let mut rng = SeededRng::new(62);
        for k in 0..40 {
            let f = if k % 2 == 0 {
                rng.frame(space).unwrap()
            } else {
                let mut raw = rng.gaussian_matrix(4, 2);
                for r in 0..2 {
                    raw[(r, 0)] = real(0.0);
                }
                Frame::orthonormalize(space, raw).unwrap()
            };
            let member = schubert_membership(&f, &v, &flag, DEFAULT_RANK_TOL).unwrap().in_z;
            assert_eq!(member, cut_locus_test(&f, 1e-9).unwrap());
            assert_eq!(member, k % 2 == 1);
        }
    }
}
