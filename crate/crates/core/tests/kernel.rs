use grassgeo::geom::{exp0, frame_of_chart, log0, transport_to_origin, ChartPoint, Frame};
use grassgeo::kernel::{
    cayley_distance, critical_points, diastasis, energy, energy_gradient, g24_relation, kernel, normalized_overlap,
    plucker_embed, plucker_overlap_oracle, EnergySpec,
};
use grassgeo::linalg::frobenius;
use grassgeo::sampling::SeededRng;
use grassgeo::GrassmannSpace;
use proptest::prelude::*;

fn compact_strategy(max_dim: usize) -> impl Strategy<Value = GrassmannSpace> {
    (1usize..max_dim, 1usize..max_dim)
        .prop_filter("n + m bounded", move |(n, m)| n + m <= max_dim)
        .prop_map(|(n, m)| GrassmannSpace::compact(n, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_hermitian(seed in any::<u64>(), n in 1usize..4, m in 1usize..4, compact in any::<bool>()) {
        let space = if compact { GrassmannSpace::compact(n, m) } else { GrassmannSpace::noncompact(n, m) }.unwrap();
        let mut rng = SeededRng::new(seed);
        let (a, b) = (rng.chart_point(space), rng.chart_point(space));
        let k = kernel(&a, &b).unwrap();
        prop_assert!((k - kernel(&b, &a).unwrap().conj()).norm() < 1e-12 * k.norm().max(1.0));
        prop_assert!(kernel(&a, &a).unwrap().re >= 1.0 - 1e-12);
        let ov = normalized_overlap(&a, &b).unwrap().normalized.norm();
        prop_assert!(ov <= 1.0 + 1e-12);
    }

    #[test]
    fn cauchy_formula(space in compact_strategy(8), seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let (a, b) = (rng.chart_point(space), rng.chart_point(space));
        let direct = normalized_overlap(&a, &b).unwrap().normalized;
        let oracle = plucker_overlap_oracle(&frame_of_chart(&a).unwrap(), &frame_of_chart(&b).unwrap()).unwrap();
        prop_assert!((direct.norm() - oracle.norm()).abs() < 1e-10);
    }

    #[test]
    fn diastasis_is_minus_two_log_cos_cayley(space in compact_strategy(6), seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let (a, b) = (rng.chart_point(space), rng.chart_point(space));
        let d = diastasis(&a, &b).unwrap();
        prop_assert!((d + 2.0 * cayley_distance(&a, &b).unwrap().cos().ln()).abs() < 1e-9);
        prop_assert!((d - diastasis(&b, &a).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn overlap_survives_transport(seed in any::<u64>(), n in 1usize..4, m in 1usize..4, compact in any::<bool>()) {
        let space = if compact { GrassmannSpace::compact(n, m) } else { GrassmannSpace::noncompact(n, m) }.unwrap();
        let mut rng = SeededRng::new(seed);
        let (base, a, b) = (rng.chart_point(space), rng.chart_point(space), rng.chart_point(space));
        let g = transport_to_origin(&base).unwrap();
        let moved = |p: &ChartPoint| grassgeo::geom::chart_of_frame(&g.apply(&frame_of_chart(p).unwrap()));
        let (ma, mb) = match (moved(&a), moved(&b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Ok(()),
        };
        let before = normalized_overlap(&a, &b).unwrap().normalized.norm();
        let after = normalized_overlap(&ma, &mb).unwrap().normalized.norm();
        prop_assert!((before - after).abs() < 1e-10, "{before} vs {after}");
    }

    #[test]
    fn critical_values_are_subset_sums(space in compact_strategy(7), seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed);
        let spec = EnergySpec::new((0..space.dim()).map(|_| rng.uniform_in(-3.0, 3.0)).collect()).unwrap();
        prop_assume!(spec.degenerate_pair().is_none());
        let pts = critical_points(space, &spec).unwrap();
        for p in &pts {
            let sum: f64 = p.subset.iter().map(|&i| spec.eps()[i]).sum();
            prop_assert!((p.value - sum).abs() < 1e-12);
        }
        let best = pts.iter().max_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
        let mut order: Vec<usize> = (0..space.dim()).collect();
        order.sort_by(|&i, &j| spec.eps()[j].total_cmp(&spec.eps()[i]));
        let mut top: Vec<usize> = order[..space.n()].to_vec();
        top.sort_unstable();
        prop_assert_eq!(&best.subset, &top);
    }
}

#[test]
fn noncompact_overlap_along_geodesics() {
    // cos θ · cosh δ = 1 along rank-one geodesics from the origin
    let mut rng = SeededRng::new(100);
    for (n, m) in [(1, 1), (1, 3), (3, 1)] {
        let space = GrassmannSpace::noncompact(n, m).unwrap();
        for _ in 0..20 {
            let len = rng.uniform_in(0.05, 4.0);
            let z = exp0(&rng.tangent(space, len)).unwrap();
            let delta = log0(&z).unwrap().norm();
            let cos = normalized_overlap(&ChartPoint::origin(space), &z).unwrap().normalized.norm();
            assert!((cos * delta.cosh() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn noncompact_overlap_is_product_of_hyperbolic_cosines() {
    let space = GrassmannSpace::noncompact(2, 2).unwrap();
    let mut rng = SeededRng::new(101);
    for _ in 0..20 {
        let len = rng.uniform_in(0.1, 2.0);
        let b = rng.tangent(space, len);
        let z = exp0(&b).unwrap();
        let cosh_prod: f64 = grassgeo::linalg::singular_values(b.matrix()).unwrap().iter().map(|s| s.cosh()).product();
        let cos = normalized_overlap(&ChartPoint::origin(space), &z).unwrap().normalized.norm();
        assert!((cos * cosh_prod - 1.0).abs() < 1e-9);
    }
}

#[test]
fn g24_three_term_relation() {
    let space = GrassmannSpace::compact(2, 2).unwrap();
    let mut rng = SeededRng::new(102);
    for _ in 0..100 {
        let p = plucker_embed(&rng.frame(space).unwrap()).unwrap();
        assert!(g24_relation(&p).unwrap().norm() < 1e-12);
    }
}

#[test]
fn energy_gradient_at_coordinate_plane_images() {
    // coordinate planes inside the chart of O are O itself; move the chart instead
    let space = GrassmannSpace::compact(2, 3).unwrap();
    let spec = EnergySpec::new(vec![0.5, -1.0, 2.0, 3.5, 1.25]).unwrap();
    let pts = critical_points(space, &spec).unwrap();
    assert_eq!(pts.len(), 10);
    assert!(pts.iter().all(|p| p.gradient_norm < 1e-10));
    let mut rng = SeededRng::new(103);
    for _ in 0..20 {
        let p = rng.chart_point(space);
        assert!(frobenius(&energy_gradient(&spec, &p).unwrap()) > 1e-4);
    }
    assert_eq!(energy(&spec, &Frame::origin(space)).unwrap(), -0.5);
}
