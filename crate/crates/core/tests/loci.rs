use std::f64::consts::FRAC_PI_2;

use grassgeo::geom::{exp0_frame, Frame};
use grassgeo::linalg::{real, DEFAULT_RANK_TOL};
use grassgeo::loci::{
    cartan_to_tangent, conjugate_stratum_i, conjugate_stratum_w, cut_locus_report, cut_locus_test,
    disjoint_union_check, is_conjugate, schubert_membership, tangent_conjugate_times, CartanVector, DivisorClass,
    Flag, SchubertSymbol, DEFAULT_ANGLE_TOL, DEFAULT_CONJUGATE_TOL, DEFAULT_CUT_TOL,
};
use grassgeo::sampling::SeededRng;
use grassgeo::GrassmannSpace;

fn spaces() -> Vec<GrassmannSpace> {
    [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)].iter().map(|&(n, m)| GrassmannSpace::compact(n, m).unwrap()).collect()
}

/// Orthonormal frame whose first column is a random unit vector of `O^⊥`.
fn through_orthogonal_complement(space: GrassmannSpace, rng: &mut SeededRng) -> Frame {
    let mut raw = rng.gaussian_matrix(space.dim(), space.n());
    for r in 0..space.n() {
        raw[(r, 0)] = real(0.0);
    }
    Frame::orthonormalize(space, raw).unwrap()
}

#[test]
fn divisor_iff_right_angle() {
    let mut rng = SeededRng::new(110);
    for space in spaces() {
        for k in 0..100 {
            let f = if k % 4 == 0 { through_orthogonal_complement(space, &mut rng) } else { rng.frame(space).unwrap() };
            let r = cut_locus_report(&f, 1e-10).unwrap();
            assert_eq!(r.overlap < 1e-10, r.max_angle > FRAC_PI_2 - 1e-5, "{space}: {r:?}");
            assert_eq!(r.on_cut_locus, k % 4 == 0);
        }
    }
}

#[test]
fn every_plane_is_in_exactly_one_piece() {
    let mut rng = SeededRng::new(111);
    let space = GrassmannSpace::compact(2, 3).unwrap();
    let (mut chart, mut divisor) = (0, 0);
    for k in 0..1000 {
        let f = if k % 10 == 0 { through_orthogonal_complement(space, &mut rng) } else { rng.frame(space).unwrap() };
        match disjoint_union_check(&f, DEFAULT_CUT_TOL).unwrap() {
            DivisorClass::Chart(_) => chart += 1,
            DivisorClass::PolarDivisor { .. } => divisor += 1,
            DivisorClass::NearDivisor { .. } => panic!("borderline frame at sample {k}"),
        }
    }
    assert_eq!((chart, divisor), (900, 100));
}

#[test]
fn schubert_duality_with_cut_locus() {
    let mut rng = SeededRng::new(112);
    for space in spaces() {
        let flag = Flag::polar_adapted(&space);
        let v = SchubertSymbol::omega_pl(space.n(), space.m(), space.m(), 1).unwrap();
        let random = (0..1000).map(|_| rng.frame(space).unwrap()).collect::<Vec<_>>();
        let built = (0..100).map(|_| through_orthogonal_complement(space, &mut rng)).collect::<Vec<_>>();
        for (f, expected) in random.iter().map(|f| (f, false)).chain(built.iter().map(|f| (f, true))) {
            let member = schubert_membership(f, &v, &flag, DEFAULT_RANK_TOL).unwrap().in_z;
            assert_eq!(member, cut_locus_test(f, DEFAULT_CUT_TOL).unwrap());
            assert_eq!(member, expected, "{space}");
        }
    }
}

#[test]
fn origin_stratum_with_standard_flag() {
    for space in spaces() {
        let v = SchubertSymbol::omega_pl(space.n(), space.m(), space.n(), 1).unwrap();
        let m = schubert_membership(&Frame::origin(space), &v, &Flag::standard(space.dim()), DEFAULT_RANK_TOL).unwrap();
        assert!(m.in_z);
    }
}

#[test]
fn conjugate_points_lie_in_the_strata() {
    let mut rng = SeededRng::new(113);
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)] {
        let space = GrassmannSpace::compact(n, m).unwrap();
        for _ in 0..5 {
            let h = CartanVector::new(rng.unit_vector(space.rank())).unwrap();
            let b = cartan_to_tangent(space, &h).unwrap();
            for t in tangent_conjugate_times(space, &h, 6.0).unwrap() {
                assert!(is_conjugate(&b, t.t, DEFAULT_CONJUGATE_TOL).unwrap(), "{space} t = {}", t.t);
                let f = exp0_frame(&b.scaled(t.t)).unwrap();
                let w = conjugate_stratum_w(&f, DEFAULT_ANGLE_TOL).unwrap();
                let i = conjugate_stratum_i(&f, DEFAULT_ANGLE_TOL).unwrap();
                assert!(w || i, "{space} t = {} h = {:?}", t.t, h.components());
            }
        }
    }
}

#[test]
fn first_conjugate_time_of_projective_line() {
    let cp1 = GrassmannSpace::compact(1, 1).unwrap();
    let h = CartanVector::new(vec![1.0]).unwrap();
    let first = &tangent_conjugate_times(cp1, &h, 10.0).unwrap()[0];
    assert_eq!(first.t, FRAC_PI_2);
    assert!(is_conjugate(&cartan_to_tangent(cp1, &h).unwrap(), first.t, DEFAULT_CONJUGATE_TOL).unwrap());
}
