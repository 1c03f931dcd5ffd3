use std::f64::consts::PI;

use proptest::prelude::*;
use smallgon::analysis::GraphClass;
use smallgon::constructions::{build_dn, build_from_angles, dn_width, AngleVector};
use smallgon::geometry::{
    convex_hull, diameter, diameter_calipers, is_convex, perimeter, width, Point2, Polygon,
};
use smallgon::solver::{delta0, solve_bn_star, solve_dn_star, RootMethod};

fn moved(p: &Polygon, angle: f64, dx: f64, dy: f64) -> Polygon {
    let (s, c) = angle.sin_cos();
    let pts = p
        .vertices()
        .iter()
        .map(|v| Point2::new(c * v.x - s * v.y + dx, s * v.x + c * v.y + dy))
        .collect();
    Polygon::new(pts).unwrap()
}

fn points() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3..40)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metrics_survive_rigid_motion(
        s in 4u32..7,
        angle in -PI..PI,
        dx in -10.0f64..10.0,
        dy in -10.0f64..10.0,
    ) {
        let r = build_dn(1 << s).unwrap();
        let q = moved(&r.polygon, angle, dx, dy);
        prop_assert!((perimeter(&q) - r.metrics.perimeter).abs() < 1e-12);
        prop_assert!((width(&q).unwrap() - r.metrics.width).abs() < 1e-12);
        prop_assert!((diameter(&q) - r.metrics.diameter).abs() < 1e-12);
    }

    #[test]
    fn hull_measures_agree(pts in points()) {
        let hull = convex_hull(&pts);
        prop_assume!(hull.len() >= 3);
        let p = Polygon::new(hull).unwrap();
        prop_assume!(is_convex(&p));
        let d = diameter(&p);
        prop_assert!((diameter_calipers(&p).unwrap() - d).abs() <= 1e-12 * d.max(1.0));
        prop_assert!(width(&p).unwrap() <= d + 1e-12);
    }
}

#[test]
fn dn_is_mirror_symmetric() {
    for s in 4..=8 {
        let r = build_dn(1 << s).unwrap();
        let v = r.polygon.vertices();
        for p in v {
            let m = p.mirror();
            let nearest = v.iter().map(|q| q.dist(m)).fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-12, "n = {}: {p:?} has no mirror image", 1 << s);
        }
    }
}

#[test]
fn dn_width_matches_half_angle_form() {
    for s in 4..=9 {
        let n = 1usize << s;
        let d = delta0(n, RootMethod::ClosedForm).unwrap().delta0;
        let want = (PI / (2 * n) as f64 + d / 2.0).cos();
        let measured = width(&build_dn(n).unwrap().polygon).unwrap();
        assert!(
            (measured - want).abs() < 1e-12,
            "n = {n}: {measured} vs {want}"
        );
        assert!((dn_width(n).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn perimeter_identity_holds_for_dn() {
    for s in 4..=9 {
        let n = 1usize << s;
        let d = delta0(n, RootMethod::Bisection).unwrap().delta0;
        let av = AngleVector::alternating(n, d).unwrap();
        let built = build_from_angles(&av).unwrap();
        assert!(
            (av.perimeter() - built.metrics.perimeter).abs() < 1e-10,
            "n = {n}"
        );
    }
}

#[test]
fn optima_rebuild_to_feasible_polygons() {
    for n in [16, 32, 64] {
        for (r, class) in [
            (solve_dn_star(n).unwrap(), GraphClass::DFamily),
            (solve_bn_star(n).unwrap(), GraphClass::BFamily),
        ] {
            assert!(r.converged, "{:?} n = {n}", r.problem);
            let built = r.polygon().unwrap();
            let m = built.metrics;
            assert!(
                m.is_convex && (m.diameter - 1.0).abs() < 1e-9,
                "{:?} n = {n}: {m:?}",
                r.problem
            );
            assert!((m.perimeter - r.objective).abs() < 1e-10);
            assert!((r.alphas.perimeter() - r.objective).abs() < 1e-12);
            assert_eq!(
                built.diameter_graph.classification, class,
                "{:?} n = {n}",
                r.problem
            );
        }
    }
}
