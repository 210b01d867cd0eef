use grassgeo::linalg::{apply_spectral, principal_angles, rank_tol, svd, CMatrix};
use grassgeo::sampling::SeededRng;
use grassgeo::{Error, GrassmannSpace};
use proptest::prelude::*;

fn unitary(rng: &mut SeededRng, k: usize) -> CMatrix {
    let d = svd(&rng.gaussian_matrix(k, k)).unwrap();
    &d.u * d.v.adjoint()
}

fn odd_functions() -> Vec<fn(f64) -> f64> {
    vec![f64::sin, f64::tanh, f64::atan, |x| x * x * x]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_calculus_is_unitarily_equivariant(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5, f in 0usize..4) {
        let mut rng = SeededRng::new(seed);
        let b = rng.gaussian_matrix(rows, cols);
        let (u, v) = (unitary(&mut rng, rows), unitary(&mut rng, cols));
        let f = odd_functions()[f];
        let lhs = apply_spectral(&(&u * &b * v.adjoint()), |s| Some(f(s))).unwrap();
        let rhs = &u * apply_spectral(&b, |s| Some(f(s))).unwrap() * v.adjoint();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn svd_reconstructs(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let m = SeededRng::new(seed).gaussian_matrix(rows, cols);
        let d = svd(&m).unwrap();
        prop_assert!((d.reconstruct() - &m).norm() <= 1e-12 * m.norm());
        prop_assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(d.singular_values.iter().all(|&s| s >= 0.0));
    }

    #[test]
    fn principal_angles_are_symmetric(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let space = GrassmannSpace::compact(n, m).unwrap();
        let mut rng = SeededRng::new(seed);
        let a = rng.frame(space).unwrap();
        let b = rng.frame(space).unwrap();
        let ab = principal_angles(a.matrix(), b.matrix()).unwrap();
        let ba = principal_angles(b.matrix(), a.matrix()).unwrap();
        for (x, y) in ab.iter().zip(&ba) {
            prop_assert!((x - y).abs() < 1e-10);
        }
        prop_assert!(ab.iter().all(|&t| (0.0..=std::f64::consts::FRAC_PI_2).contains(&t)));
    }

    #[test]
    fn rank_is_unitarily_invariant(seed in any::<u64>(), rows in 2usize..6, cols in 2usize..6, k in 0usize..3) {
        let mut rng = SeededRng::new(seed);
        let k = k.min(rows.min(cols));
        let m = rng.gaussian_matrix(rows, k) * rng.gaussian_matrix(k, cols);
        let (u, v) = (unitary(&mut rng, rows), unitary(&mut rng, cols));
        let r = rank_tol(&m, 1e-9).unwrap();
        prop_assert_eq!(r, k);
        prop_assert_eq!(rank_tol(&(&u * &m * &v), 1e-9).unwrap(), r);
    }
}

#[test]
fn principal_angles_reject_non_orthonormal_input() {
    let a = CMatrix::identity(3, 1);
    let b = a.map(|z| z * 2.0);
    assert!(matches!(principal_angles(&a, &b), Err(Error::Precondition(_))));
}

#[test]
fn scalar_line_angle_matches_overlap() {
    // G_1(C^2): the angle between O and the line of Z is arctan |Z|
    use grassgeo::geom::{frame_of_chart, ChartPoint, Frame};
    let space = GrassmannSpace::compact(1, 1).unwrap();
    let mut rng = SeededRng::new(3);
    for _ in 0..20 {
        let z = rng.chart_point(space);
        let modulus = z.matrix()[(0, 0)].norm();
        let f = frame_of_chart(&ChartPoint::new(space, z.matrix().clone()).unwrap()).unwrap();
        let theta = Frame::origin(space).principal_angles(&f).unwrap()[0];
        let overlap = (1.0 + modulus * modulus).powf(-0.5);
        assert!((theta.cos() - overlap).abs() < 1e-14);
        assert!((theta - modulus.atan()).abs() < 1e-14);
    }
}
