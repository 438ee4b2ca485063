use std::f64::consts::{PI, TAU};

use dubins_circle::extrema::DEGENERATE_PHI2;
use dubins_circle::geometry::angle_diff;
use dubins_circle::{
    final_config_at_alpha, mirror_problem, refine_min, shortest_for_type, shortest_to_circle,
    sweep, trace_path, Configuration, PathType, Point, Rotation, RotationalRelation, TargetCircle,
};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (Configuration, TargetCircle)> {
    (
        -20.0..20.0f64,
        -20.0..20.0f64,
        0.0..TAU,
        6.0..30.0f64,
        0.0..TAU,
        0.5..3.0f64,
        any::<bool>(),
    )
        .prop_map(|(x, y, th, rho, ang, r, cw)| {
            let start = Configuration::new(x, y, th);
            let dir = if cw {
                Rotation::Clockwise
            } else {
                Rotation::CounterClockwise
            };
            let center = start.position() + Point::from_angle(ang) * (rho * r);
            (start, TargetCircle::new(center, r, dir).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_agrees_with_sweep((start, circle) in instance()) {
        for t in PathType::ALL {
            let rep = shortest_for_type(&start, &circle, t);
            let best = rep.best.unwrap();
            let res = sweep(&start, &circle, t, 20_000).unwrap();
            let oracle = refine_min(&res, &start, &circle).unwrap();
            prop_assert!(
                (best.length - oracle.length).abs() <= 1e-6 * circle.radius,
                "{t}: solver {} oracle {}", best.length, oracle.length
            );
        }
    }

    #[test]
    fn best_paths_arrive_tangentially((start, circle) in instance()) {
        let sol = shortest_to_circle(&start, &circle).unwrap();
        let end = trace_path(&sol.path, &start);
        let want = final_config_at_alpha(&circle, sol.alpha);
        let tol = 1e-8 * sol.length.max(1.0);
        prop_assert!(end.position().distance(want.position()) < tol);
        prop_assert!(angle_diff(end.theta, want.theta).abs() < 1e-8);
        for rep in &sol.per_type {
            prop_assert!(rep.best.unwrap().length >= sol.length - 1e-9 * circle.radius);
        }
    }

    #[test]
    fn minima_satisfy_their_conditions((start, circle) in instance()) {
        for t in PathType::ALL {
            let rep = shortest_for_type(&start, &circle, t);
            for m in &rep.minima {
                match rep.relation {
                    RotationalRelation::CounterRotational => {
                        prop_assert!((m.phi2 - PI / 3.0).abs() < 1e-6)
                    }
                    RotationalRelation::CoRotational => prop_assert!(m.phi2 < DEGENERATE_PHI2),
                }
            }
            for m in &rep.maxima {
                prop_assert!((m.phi2 - 5.0 * PI / 3.0).abs() < 1e-6);
            }
            for d in &rep.discontinuities {
                prop_assert!((d.jump.abs() - TAU * circle.radius).abs() < 1e-6 * circle.radius);
            }
        }
    }

    #[test]
    fn mirrored_problem_swaps_types((start, circle) in instance()) {
        let (ms, mc, _) = mirror_problem(&start, &circle);
        for t in PathType::ALL {
            let a = shortest_for_type(&start, &circle, t).best.unwrap();
            let b = shortest_for_type(&ms, &mc, t.mirrored()).best.unwrap();
            prop_assert!((a.length - b.length).abs() < 1e-9 * circle.radius.max(1.0), "{t}");
        }
    }
}
