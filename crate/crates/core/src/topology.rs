//! Exact combinatorial invariants of `G_n(C^{n+m})`: Euler characteristic,
//! Weyl group ratio, Schubert cells and the characteristic-number report.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::geom::Frame;
use crate::kernel::{critical_points, plucker_embed, plucker_overlap_oracle, subsets, EnergySpec};
use crate::loci::SchubertSymbol;
use crate::space::GrassmannSpace;

/// Upper bound on [`schubert_cells`] output.
pub const MAX_CELLS: u128 = 1_000_000;

/// Overlap modulus below which coordinate coherent vectors count as orthogonal.
pub const ORTHOGONAL_OVERLAP: f64 = 1e-14;

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition(format!("need n, m >= 1, got ({n}, {m})")));
    }
    Ok(())
}

/// `C(a, b)` with exact intermediate products, `None` past `u128`.
fn binomial(a: usize, b: usize) -> Option<u128> {
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by i + 1
        acc = acc.checked_mul((a - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn to_u64(x: u128, what: &str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow(format!("{what} {x} does not fit in 64 bits")))
}

/// `χ(G_n(C^{n+m})) = C(n+m, n)`.
pub fn euler_characteristic(n: usize, m: usize) -> Result<u64> {
    check_dims(n, m)?;
    let c = binomial(n + m, n).ok_or_else(|| Error::Overflow(format!("C({}, {n}) overflows", n + m)))?;
    to_u64(c, "Euler characteristic")
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// `|W_G| / |W_H| = (n+m)! / (n! m!)` for `G = SU(n+m)`, `H = S(U(n) x U(m))`.
pub fn weyl_ratio(n: usize, m: usize) -> Result<u64> {
    check_dims(n, m)?;
    let wg = factorial(n + m);
    let wh = factorial(n) * factorial(m);
    if &wg % &wh != BigUint::ZERO {
        return Err(Error::Inconsistent(format!("|W_H| does not divide |W_G| for ({n}, {m})")));
    }
    let ratio = wg / wh;
    u64::try_from(&ratio).map_err(|_| Error::Overflow(format!("Weyl ratio {ratio} does not fit in 64 bits")))
}

/// All symbols `0 <= ω(1) <= ... <= ω(n) <= m`, in lexicographic order.
pub fn schubert_cells(n: usize, m: usize) -> Result<Vec<SchubertSymbol>> {
    check_dims(n, m)?;
    let count = binomial(n + m, n).unwrap_or(u128::MAX);
    if count > MAX_CELLS {
        return Err(Error::TooLarge { count, limit: MAX_CELLS });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut omega = vec![0usize; n];
    loop {
        out.push(SchubertSymbol::new(omega.clone(), m)?);
        // next nondecreasing sequence
        let Some(k) = (0..n).rev().find(|&k| omega[k] < m) else { break };
        let v = omega[k] + 1;
        omega[k..].iter_mut().for_each(|w| *w = v);
    }
    Ok(out)
}

/// The seven integers that all equal `C(n+m, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicReport {
    pub euler: u64,
    pub weyl_ratio: u64,
    pub cell_count: u64,
    pub fundamental_rep_dim: u64,
    /// Reported as the Plücker embedding dimension.
    pub kodaira_n: u64,
    pub critical_count: u64,
    pub max_orthogonal_coherent: u64,
    /// Largest pairwise overlap among the coordinate coherent vectors.
    pub max_coherent_overlap: f64,
}

impl CharacteristicReport {
    pub fn values(&self) -> [u64; 7] {
        [
            self.euler,
            self.weyl_ratio,
            self.cell_count,
            self.fundamental_rep_dim,
            self.kodaira_n,
            self.critical_count,
            self.max_orthogonal_coherent,
        ]
    }

    pub fn all_equal(&self) -> bool {
        let v = self.values();
        v.iter().all(|&x| x == v[0])
    }
}

pub fn characteristic_report(n: usize, m: usize, spec: &EnergySpec) -> Result<CharacteristicReport> {
    let space = GrassmannSpace::compact(n, m)?;
    let coordinate_frames = subsets(space.dim(), n)
        .iter()
        .map(|s| Frame::coordinate(space, s))
        .collect::<Result<Vec<_>>>()?;
    let mut max_overlap: f64 = 0.0;
    for (i, a) in coordinate_frames.iter().enumerate() {
        for b in &coordinate_frames[i + 1..] {
            max_overlap = max_overlap.max(plucker_overlap_oracle(a, b)?.norm());
        }
    }
    if max_overlap >= ORTHOGONAL_OVERLAP {
        return Err(Error::Inconsistent(format!("coordinate coherent vectors overlap by {max_overlap:e}")));
    }
    let plucker_dim = plucker_embed(&Frame::origin(space))?.len() as u64;
    let report = CharacteristicReport {
        euler: euler_characteristic(n, m)?,
        weyl_ratio: weyl_ratio(n, m)?,
        cell_count: schubert_cells(n, m)?.len() as u64,
        fundamental_rep_dim: plucker_dim,
        kodaira_n: plucker_dim,
        critical_count: critical_points(space, spec)?.len() as u64,
        max_orthogonal_coherent: coordinate_frames.len() as u64,
        max_coherent_overlap: max_overlap,
    };
    if !report.all_equal() {
        return Err(Error::Inconsistent(format!("characteristic numbers differ: {:?}", report.values())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_euler_numbers() {
        assert_eq!(euler_characteristic(1, 1).unwrap(), 2);
        assert_eq!(euler_characteristic(2, 2).unwrap(), 6);
        assert_eq!(weyl_ratio(2, 2).unwrap(), 6);
        assert_eq!(euler_characteristic(30, 30).unwrap(), 118264581564861424);
        assert!(matches!(euler_characteristic(40, 40), Err(Error::Overflow(_))));
        assert!(matches!(weyl_ratio(40, 40), Err(Error::Overflow(_))));
    }

    #[test]
    fn cells_of_small_grassmannians() {
        let c11: Vec<Vec<usize>> = schubert_cells(1, 1).unwrap().iter().map(|s| s.omega().to_vec()).collect();
        assert_eq!(c11, vec![vec![0], vec![1]]);
        let mut dims: Vec<usize> = schubert_cells(2, 2).unwrap().iter().map(|s| s.cell_dim()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 1, 2, 2, 3, 4]);
        assert_eq!(schubert_cells(3, 2).unwrap().len(), 10);
        assert!(matches!(schubert_cells(12, 12), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn reports_agree() {
        for (n, m, v) in [(1, 1, 2), (2, 2, 6), (1, 3, 4)] {
            let spec = EnergySpec::new((0..n + m).map(|k| k as f64 + 0.5).collect()).unwrap();
            let r = characteristic_report(n, m, &spec).unwrap();
            assert_eq!(r.values(), [v; 7]);
            assert_eq!(r.max_coherent_overlap, 0.0);
        }
    }
}
