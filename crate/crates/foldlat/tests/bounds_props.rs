use foldlat::bounds::{
    circle_lower_by_clipping, convex_intersection_area, eval_lower_bound, ngon_upper, optimize_bound,
    regular_polygon, signed_area, table_bounds, upper_bound,
};
use foldlat::{BoundProblem, Error, PolygonF64};
use proptest::prelude::*;

fn inside(p: &PolygonF64, x: f64, y: f64) -> bool {
    let s = signed_area(p).signum();
    (0..p.len()).all(|i| {
        let (a, b) = (p[i], p[(i + 1) % p.len()]);
        s * ((b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0])) >= 0.0
    })
}

/// Intersection area by counting midpoints of a fine grid.
fn grid_area(p: &PolygonF64, q: &PolygonF64) -> f64 {
    let n = 600;
    let (lo, hi) = (-3.0, 3.0);
    let h = (hi - lo) / n as f64;
    let mut count = 0usize;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (lo + (i as f64 + 0.5) * h, lo + (j as f64 + 0.5) * h);
            if inside(p, x, y) && inside(q, x, y) {
                count += 1;
            }
        }
    }
    count as f64 * h * h
}

fn convex() -> impl Strategy<Value = PolygonF64> {
    (3usize..9, 0.3f64..1.5, 0.0f64..6.3, -0.8f64..0.8, -0.8f64..0.8, 0.5f64..1.5, any::<bool>()).prop_map(
        |(n, r, start, dx, dy, stretch, flip)| {
            let mut p: PolygonF64 =
                regular_polygon(n, r, start).into_iter().map(|[x, y]| [x * stretch + dx, y + dy]).collect();
            if flip {
                p.reverse();
            }
            p
        },
    )
}

const ALL: [BoundProblem; 12] = [
    BoundProblem::TriangleEq,
    BoundProblem::TriangleIso,
    BoundProblem::Square,
    BoundProblem::Pentagon,
    BoundProblem::Hexagon,
    BoundProblem::Heptagon,
    BoundProblem::Octagon,
    BoundProblem::Nonagon,
    BoundProblem::Decagon,
    BoundProblem::Ngon12k(12),
    BoundProblem::Ngon12k(48),
    BoundProblem::Circle,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn clipping_matches_grid(p in convex(), q in convex()) {
        let a = convex_intersection_area(&p, &q).unwrap();
        let want = grid_area(&p, &q);
        // Boundary cells of a 0.01 grid along both perimeters.
        prop_assert!((a - want).abs() < 0.08, "{a} vs {want}");
    }

    #[test]
    fn clipping_invariants(p in convex(), q in convex(), tx in -2.0f64..2.0, ty in -2.0f64..2.0) {
        let a = convex_intersection_area(&p, &q).unwrap();
        prop_assert!((a - convex_intersection_area(&q, &p).unwrap()).abs() < 1e-9);
        prop_assert!(a <= signed_area(&p).abs().min(signed_area(&q).abs()) + 1e-9);
        prop_assert!(a >= 0.0);
        let shift = |v: &PolygonF64| -> PolygonF64 { v.iter().map(|&[x, y]| [x + tx, y + ty]).collect() };
        prop_assert!((a - convex_intersection_area(&shift(&p), &shift(&q)).unwrap()).abs() < 1e-9);
        prop_assert!((convex_intersection_area(&p, &p).unwrap() - signed_area(&p).abs()).abs() < 1e-9);
    }

    #[test]
    fn lower_bound_is_below_upper(idx in 0usize..12, u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let bp = ALL[idx];
        let params: Vec<f64> = bp
            .param_ranges::<f64>()
            .iter()
            .zip([u, v])
            .map(|(&(lo, hi), t)| lo + (hi - lo) * (1e-6 + t * (1.0 - 1e-6)))
            .collect();
        let lower = eval_lower_bound(bp, &params).unwrap();
        prop_assert!(lower >= 0.0);
        prop_assert!(lower <= upper_bound::<f64>(bp) + 1e-9, "{bp} {params:?}");
    }
}

#[test]
fn regular_polygon_area() {
    for n in 3..40usize {
        let p = regular_polygon(n, 1.0, 0.3);
        let want = n as f64 * (std::f64::consts::TAU / n as f64).sin() / 2.0;
        assert!((signed_area(&p) - want).abs() < 1e-12);
        assert!((ngon_upper::<f64>(n as u32) - want.sqrt()).abs() < 1e-12);
    }
    assert!((upper_bound::<f64>(BoundProblem::Circle) - std::f64::consts::PI.sqrt()).abs() < 1e-12);
}

#[test]
fn optimizers_stay_in_range() {
    for bp in ALL {
        let r = optimize_bound::<f64>(bp);
        let ranges = bp.param_ranges::<f64>();
        assert_eq!(r.argmax.len(), ranges.len());
        for (x, (lo, hi)) in r.argmax.iter().zip(&ranges) {
            assert!(x > lo && x <= hi, "{bp}: {x} outside ({lo}, {hi}]");
        }
        assert!(r.lower > 0.0 && r.ratio <= 1.0 + 1e-9, "{bp}: {r:?}");
        // No sampled feasible point beats the optimum.
        if let [(lo, hi)] = ranges.as_slice() {
            for i in 1..=200 {
                let x = lo + (hi - lo) * i as f64 / 200.0;
                assert!(eval_lower_bound(bp, &[x]).unwrap() <= r.lower + 1e-9, "{bp} at {x}");
            }
        }
    }
}

#[test]
fn single_precision_agrees() {
    for bp in [BoundProblem::Hexagon, BoundProblem::Octagon, BoundProblem::Circle] {
        let a = optimize_bound::<f64>(bp);
        let b = optimize_bound::<f32>(bp);
        assert!((a.lower - b.lower as f64).abs() < 1e-4, "{bp}");
    }
    let rows = table_bounds::<f64>();
    assert_eq!(rows.len(), 17);
    assert!(rows.iter().all(|r| r.lower <= r.upper + 1e-9));
}

#[test]
fn circle_by_clipping_converges() {
    let r = optimize_bound::<f64>(BoundProblem::Circle);
    let clipped = circle_lower_by_clipping(r.argmax[0], 4096).unwrap();
    assert!((clipped - r.lower).abs() < 1e-4, "{clipped} vs {}", r.lower);
}

#[test]
fn parse_and_errors() {
    for bp in ALL {
        assert_eq!(bp.to_string().parse::<BoundProblem>().unwrap(), bp);
    }
    assert!("ngon_12k:13".parse::<BoundProblem>().is_err());
    assert!("blob".parse::<BoundProblem>().is_err());
    assert!(matches!(eval_lower_bound::<f64>(BoundProblem::Octagon, &[]), Err(Error::ParamOutOfRange(_))));
    assert!(matches!(eval_lower_bound(BoundProblem::Octagon, &[1.5]), Err(Error::ParamOutOfRange(_))));
    assert!(matches!(eval_lower_bound(BoundProblem::Square, &[0.5]), Err(Error::ParamOutOfRange(_))));
    assert!(convex_intersection_area(&[[0.0, 0.0], [1.0, 0.0]], &regular_polygon(4, 1.0, 0.0)).is_err());
    let flat = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
    assert_eq!(convex_intersection_area(&flat, &regular_polygon(4, 1.0, 0.0)).unwrap(), 0.0);
    let dart = vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.3], [1.0, 2.0]];
    assert!(matches!(convex_intersection_area(&dart, &regular_polygon(4, 1.0, 0.0)), Err(Error::DegeneratePolygon(_))));
}

/// The octagon placement built explicitly: a hexagon on the common diameter
/// whose slanted sides run along the octagon edges at (±1, 0).
#[test]
fn octagon_formula_matches_clipping() {
    let q = regular_polygon(8, 1.0, 0.0);
    let t = (std::f64::consts::PI / 8.0).tan();
    let (lo, hi) = BoundProblem::Octagon.param_ranges::<f64>()[0];
    for i in 1..=50 {
        let al = lo + (hi - lo) * i as f64 / 50.0;
        let s = vec![[1.0, 0.0], [1.0 - al * t, al], [-1.0 + al * t, al], [-1.0, 0.0], [-1.0 + al * t, -al], [1.0 - al * t, -al]];
        let want = convex_intersection_area(&s, &q).unwrap() / signed_area(&s).sqrt();
        let got = eval_lower_bound(BoundProblem::Octagon, &[al]).unwrap();
        assert!((got - want).abs() < 1e-9, "α = {al}: {got} vs {want}");
    }
}
