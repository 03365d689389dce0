use proptest::prelude::*;
use viscomplex_core::geom::{busemann, Classification};
use viscomplex_core::thick_thin::EpsAssignment;
use viscomplex_core::{BoundaryPoint, MoebiusIsometry, UhpPoint};

fn isometry() -> impl Strategy<Value = MoebiusIsometry> {
    (0.3f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b, c)| MoebiusIsometry::new(a, b, c, (1.0 + b * c) / a).unwrap())
}

fn point() -> impl Strategy<Value = UhpPoint> {
    (-4.0f64..4.0, 0.05f64..5.0).prop_map(|(x, y)| UhpPoint::new(x, y).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(1.0)
}

proptest! {
    #[test]
    fn isometries_preserve_distance(g in isometry(), p in point(), q in point()) {
        prop_assert!(rel(g.apply(&p).distance(&g.apply(&q)), p.distance(&q)) < 1e-10);
    }

    #[test]
    fn displacement_is_conjugation_equivariant(g in isometry(), h in isometry(), p in point()) {
        let lhs = g.conjugate_by(&h).displacement(&h.apply(&p));
        prop_assert!(rel(lhs, g.displacement(&p)) < 1e-9);
    }

    #[test]
    fn triangle_inequality(p in point(), q in point(), r in point()) {
        prop_assert!(p.distance(&r) <= p.distance(&q) + q.distance(&r) + 1e-12);
    }

    #[test]
    fn classification_stable_under_powers(g in isometry()) {
        let c = g.classify();
        prop_assume!(c != Classification::Elliptic && c != Classification::Identity);
        // stay away from the parabolic threshold where rounding decides the class
        prop_assume!(c == Classification::Parabolic || g.trace().abs() > 2.0 + 1e-6);
        for k in 1..=5 {
            prop_assert_eq!(g.pow(k).classify(), c);
        }
    }

    #[test]
    fn busemann_is_one_lipschitz(p in point(), q in point(), xi in -3.0f64..3.0) {
        for z in [BoundaryPoint::Infinity, BoundaryPoint::Real(xi)] {
            let b = busemann(z, &UhpPoint::I, &p) - busemann(z, &UhpPoint::I, &q);
            prop_assert!(b.abs() <= p.distance(&q) + 1e-9);
        }
    }

    #[test]
    fn sublevel_sets_move_by_conjugation(g in isometry(), h in isometry(), p in point(), a in 0.1f64..4.0) {
        let d = g.displacement(&p);
        prop_assume!((d - a).abs() > 1e-8);
        prop_assert_eq!(d < a, g.conjugate_by(&h).displacement(&h.apply(&p)) < a);
    }

    #[test]
    fn trace_ramp_levels_are_class_functions(g in isometry(), h in isometry(), w in 0.1f64..3.0) {
        let levels = EpsAssignment::new(0.05, 0.32, viscomplex_core::thick_thin::EpsRule::TraceRamp { width: w }).unwrap();
        let l = levels.level(&g);
        prop_assert!((0.05..=0.16).contains(&l));
        prop_assert!((levels.level(&g.conjugate_by(&h)) - l).abs() < 1e-9);
    }
}

#[test]
fn parabolic_monotone_on_vertical_ray() {
    let g = MoebiusIsometry::translation(0.7);
    let vals: Vec<f64> = (0..100).map(|k| g.displacement(&UhpPoint::new(0.0, (-5.0 + 15.0 * k as f64 / 99.0).exp()).unwrap())).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
}
