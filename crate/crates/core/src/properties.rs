//! Property tests across modules.

use proptest::prelude::*;

use crate::curvature::{
    corner_weights, curvature_upper_bound, exact_corner_curvature, solve_epsilon_for_budget, CornerData,
};
use crate::geometry::{convex_hull_contains, linspace, polyline_length, wedge_norm, Norm, SampledCurve};
use crate::kernel::BumpKernel;
use crate::paths::{staircase_path, Domain, ExtendedPath, Extension, ParametricPath, WaypointPath};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::smoothing::MollifiedPath;
use crate::verify::{
    check_convexity_preservation, check_dominance, check_monotonicity, check_quasiconvexity, Grid, Monotone,
};

fn kernel() -> &'static BumpKernel {
    BumpKernel::standard()
}

fn clamped_scalar(f: impl Fn(f64) -> f64 + Send + Sync + 'static, kinks: &[f64]) -> ExtendedPath {
    let p = ParametricPath::scalar(f, Domain::EntireLine).with_kinks(kinks.iter().copied());
    ExtendedPath::new(p, Extension::Clamp).unwrap()
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, dim)
}

fn corner() -> impl Strategy<Value = CornerData> {
    (2usize..=3)
        .prop_flat_map(|d| (vector(d), vector(d)))
        .prop_filter("segments bounded away from zero", |(u, v)| {
            u.iter().map(|x| x * x).sum::<f64>() > 1e-2 && v.iter().map(|x| x * x).sum::<f64>() > 1e-2
        })
        .prop_map(|(u, v)| CornerData::new(u, v, 0.0).unwrap())
}

fn rotate2(v: &[f64], angle: f64) -> Vec<f64> {
    let (s, c) = angle.sin_cos();
    vec![c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

/// Rotation about a unit axis (Rodrigues).
fn rotate3(v: &[f64], axis: [f64; 3], angle: f64) -> Vec<f64> {
    let (s, c) = angle.sin_cos();
    let k = axis;
    let kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
    let cross = [
        k[1] * v[2] - k[2] * v[1],
        k[2] * v[0] - k[0] * v[2],
        k[0] * v[1] - k[1] * v[0],
    ];
    (0..3)
        .map(|i| v[i] * c + cross[i] * s + k[i] * kv * (1.0 - c))
        .collect()
}

mod kernel_props {
    use super::*;

    proptest! {
        #[test]
        fn scaled_kernel_is_even_nonnegative_and_bounded(x in -12.0..12.0f64, eps in 1e-3..5.0f64) {
            let k = kernel();
            let v = k.eval_scaled(x, eps).unwrap();
            prop_assert!(v >= 0.0);
            prop_assert!(v <= k.sup_norm() / eps * (1.0 + 1e-12));
            prop_assert_eq!(v, k.eval_scaled(-x, eps).unwrap());
            if x.abs() >= eps {
                prop_assert_eq!(v, 0.0);
            }
        }

        #[test]
        fn cdf_is_nondecreasing(eps in 1e-3..5.0f64) {
            let k = kernel();
            let mut last = 0.0;
            for x in linspace(-eps, eps, 1000) {
                let c = k.cdf(x, eps).unwrap();
                prop_assert!(c >= last - 1e-15, "cdf drops at {x}: {c} < {last}");
                last = c;
            }
            prop_assert!((k.cdf(eps, eps).unwrap() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn first_derivative_matches_finite_differences(u in -0.95..0.95f64, eps in 0.05..5.0f64) {
            let k = kernel();
            let x = u * eps;
            let h = 1e-5 * eps;
            let fd = (k.eval_scaled(x + h, eps).unwrap() - k.eval_scaled(x - h, eps).unwrap()) / (2.0 * h);
            let d = k.derivative(x, eps, 1).unwrap();
            let scale = d.abs().max(k.sup_norm() / (eps * eps) * 1e-3);
            prop_assert!((fd - d).abs() <= 1e-6 * scale, "x={x} eps={eps}: {fd} vs {d}");
        }

        #[test]
        fn derivative_integrates_to_zero(eps in 0.01..5.0f64) {
            let k = kernel();
            let spec = QuadratureSpec::new(1e-12, 40).unwrap();
            let total = integrate(|x| k.derivative(x, eps, 1).unwrap(), -eps, eps, &[0.0], &spec).unwrap();
            prop_assert!(total.abs() <= 1e-9 / eps, "{total}");
        }
    }
}

mod quadrature_props {
    use super::*;

    fn poly(c: &[f64]) -> impl Fn(f64) -> f64 + '_ {
        move |x| c.iter().rev().fold(0.0, |acc, a| acc * x + a)
    }

    proptest! {
        #[test]
        fn linear_in_the_integrand(
            f in prop::collection::vec(-3.0..3.0f64, 1..8),
            g in prop::collection::vec(-3.0..3.0f64, 1..8),
            alpha in -2.0..2.0f64,
            beta in -2.0..2.0f64,
        ) {
            let spec = QuadratureSpec::default();
            let (pf, pg) = (poly(&f), poly(&g));
            let combined = integrate(|x| alpha * pf(x) + beta * pg(x), -1.0, 2.0, &[], &spec).unwrap();
            let parts = alpha * integrate(&pf, -1.0, 2.0, &[], &spec).unwrap()
                + beta * integrate(&pg, -1.0, 2.0, &[], &spec).unwrap();
            let scale = 1.0 + alpha.abs() + beta.abs();
            prop_assert!((combined - parts).abs() <= 2.0 * spec.tolerance * scale);
        }

        #[test]
        fn spurious_breakpoints_and_splitting(
            extra in prop::collection::vec(-0.99..0.99f64, 0..5),
            b in -0.9..0.9f64,
        ) {
            let spec = QuadratureSpec::default();
            let f = |x: f64| (1.0 - x * x).max(0.0).sqrt() + x.abs();
            let whole = integrate(f, -1.0, 1.0, &[0.0], &spec).unwrap();
            let split = integrate(f, -1.0, 1.0, &[&[0.0][..], &extra[..]].concat(), &spec).unwrap();
            prop_assert!((whole - split).abs() <= 2.0 * spec.tolerance);
            let left = integrate(f, -1.0, b, &[0.0], &spec).unwrap();
            let right = integrate(f, b, 1.0, &[0.0], &spec).unwrap();
            prop_assert!((whole - left - right).abs() <= 2.0 * spec.tolerance);
        }
    }
}

mod path_props {
    use super::*;

    fn polyline() -> impl Strategy<Value = WaypointPath> {
        (2usize..=3, 2usize..7, any::<bool>())
            .prop_flat_map(|(d, n, closed)| (prop::collection::vec(vector(d), n), Just(closed && n >= 3)))
            .prop_filter_map("distinct consecutive points", |(pts, closed)| {
                WaypointPath::new(pts, closed).ok()
            })
    }

    proptest! {
        #[test]
        fn knots_return_waypoints(path in polyline()) {
            for (i, p) in path.points().iter().enumerate() {
                prop_assert_eq!(&path.eval(i as f64), p);
            }
        }

        #[test]
        fn clamp_is_constant_outside(path in polyline(), t in 0.0..100.0f64) {
            prop_assume!(!path.is_closed());
            let ext = ExtendedPath::new(path.clone(), Extension::Clamp).unwrap();
            let end = path.parameter_end();
            prop_assert_eq!(&ext.eval(-t - 1e-9), &path.points()[0]);
            prop_assert_eq!(&ext.eval(end + t + 1e-9), path.points().last().unwrap());
        }

        #[test]
        fn periodic_repeats(path in polyline(), t in -50.0..50.0f64) {
            prop_assume!(path.is_closed());
            let ext = ExtendedPath::natural(path).unwrap();
            let period = ext.period().unwrap();
            let (a, b) = (ext.eval(t), ext.eval(t + period));
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() <= 1e-12 * (1.0 + t.abs()), "{a:?} vs {b:?}");
            }
        }
    }
}

mod smoothing_props {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn affine_functions_are_reproduced(a in -5.0..5.0f64, b in -5.0..5.0f64, eps in 0.01..3.0f64) {
            let m = MollifiedPath::uniform(clamped_scalar(move |t| a * t + b, &[]), eps).unwrap();
            for t in linspace(-3.0, 3.0, 1000) {
                let v = m.eval(t).unwrap()[0];
                prop_assert!((v - (a * t + b)).abs() < 1e-8, "t={t}: {v}");
            }
        }

        #[test]
        fn lipschitz_error_bound(eps in 0.01..2.0f64) {
            let m = MollifiedPath::uniform(clamped_scalar(f64::abs, &[0.0]), eps).unwrap();
            for t in linspace(-3.0, 3.0, 601) {
                prop_assert!((m.eval(t).unwrap()[0] - t.abs()).abs() <= eps + 1e-8);
            }
        }

        #[test]
        fn convex_sources_stay_convex_and_dominated(eps in 0.01..2.0f64) {
            let abs = ParametricPath::scalar(f64::abs, Domain::EntireLine).with_kinks([0.0]);
            let grid = Grid::new(-3.0, 3.0, 301);
            prop_assert!(check_convexity_preservation(&abs, eps, grid).unwrap().passed);
            prop_assert!(check_dominance(&abs, eps, grid).unwrap().passed);
        }

        #[test]
        fn staircase_stays_monotone(eps in 0.01..2.0f64) {
            let r = check_monotonicity(&staircase_path(4), eps, Grid::new(-1.0, 5.0, 601), Monotone::Increasing)
                .unwrap();
            prop_assert!(r.passed, "{r:?}");
        }

        #[test]
        fn quasiconvex_sources_stay_quasiconvex(eps in 0.01..2.0f64, which in 0usize..3) {
            let f = match which {
                0 => ParametricPath::scalar(|t| -kernel().eval(t), Domain::EntireLine),
                1 => ParametricPath::scalar(f64::abs, Domain::EntireLine).with_kinks([0.0]),
                _ => ParametricPath::scalar(|t: f64| (t.abs() - 1.0).max(0.0), Domain::EntireLine)
                    .with_kinks([-1.0, 1.0]),
            };
            let r = check_quasiconvexity(&f, eps, Grid::new(-3.0, 3.0, 301)).unwrap();
            prop_assert!(r.passed, "{r:?}");
        }

        #[test]
        fn derivatives_match_finite_differences(t in -1.5..1.5f64, eps in 0.2..1.0f64) {
            let f = clamped_scalar(|t: f64| t.abs() + 0.5 * (t - 0.3).max(0.0), &[0.0, 0.3]);
            let m = MollifiedPath::uniform(f, eps).unwrap();
            let h = 1e-4 * eps;
            for order in 1..=2u8 {
                let d = m.component(0, t, order).unwrap();
                let fd = (m.component(0, t + h, order - 1).unwrap() - m.component(0, t - h, order - 1).unwrap())
                    / (2.0 * h);
                let scale = d.abs().max(1.0 / eps.powi(order as i32));
                prop_assert!((d - fd).abs() <= 1e-5 * scale, "order {order}: {d} vs {fd}");
            }
        }
    }
}

mod geometry_props {
    use super::*;

    proptest! {
        #[test]
        fn refinement_never_shortens(
            pts in prop::collection::vec(vector(3), 3..20),
            extra in vector(3),
            at in 0usize..100,
        ) {
            let n = pts.len();
            let params: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let coarse = SampledCurve::new(params.clone(), pts.clone()).unwrap();
            let i = at % (n - 1);
            let mut finer_pts = pts.clone();
            finer_pts.insert(i + 1, extra);
            let mut finer_params = params;
            finer_params.insert(i + 1, i as f64 + 0.5);
            let finer = SampledCurve::new(finer_params, finer_pts).unwrap();
            for norm in [Norm::L1, Norm::L2, Norm::LInf] {
                let (c, f) = (polyline_length(&coarse, norm).unwrap(), polyline_length(&finer, norm).unwrap());
                prop_assert!(f >= c * (1.0 - 1e-14), "{norm:?}: {f} < {c}");
            }
        }

        #[test]
        fn hull_containment_ignores_order(
            cloud in prop::collection::vec(vector(3), 4..30),
            q in vector(3),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut shuffled = cloud.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let planar: Vec<Vec<f64>> = cloud.iter().map(|p| p[..2].to_vec()).collect();
            let planar_shuffled: Vec<Vec<f64>> = shuffled.iter().map(|p| p[..2].to_vec()).collect();
            prop_assert_eq!(
                convex_hull_contains(&cloud, &q, 1e-6).unwrap(),
                convex_hull_contains(&shuffled, &q, 1e-6).unwrap()
            );
            prop_assert_eq!(
                convex_hull_contains(&planar, &q[..2], 1e-6).unwrap(),
                convex_hull_contains(&planar_shuffled, &q[..2], 1e-6).unwrap()
            );
        }

        #[test]
        fn wedge_is_symmetric_and_homogeneous(
            (u, v) in (2usize..=3).prop_flat_map(|d| (vector(d), vector(d))),
            alpha in -4.0..4.0f64,
        ) {
            let w = wedge_norm(&u, &v).unwrap();
            prop_assert!((w - wedge_norm(&v, &u).unwrap()).abs() <= 1e-15 * (1.0 + w));
            let scaled: Vec<f64> = u.iter().map(|x| alpha * x).collect();
            prop_assert!((wedge_norm(&scaled, &v).unwrap() - alpha.abs() * w).abs() <= 1e-13 * (1.0 + w));
        }
    }
}

mod curvature_props {
    use super::*;

    proptest! {
        #[test]
        fn weights_sum_to_one(t in -3.0..3.0f64, eps in 1e-3..2.0f64, knot in -1.0..1.0f64) {
            let (a1, a2) = corner_weights(t, eps, knot).unwrap();
            prop_assert!((a1 + a2 - 1.0).abs() <= 1e-15);
            prop_assert!((0.0..=1.0).contains(&a1) && (0.0..=1.0).contains(&a2));
        }

        #[test]
        fn rotation_leaves_curvature_unchanged(
            c in corner(),
            eps in 0.05..0.45f64,
            u in -0.99..0.99f64,
            angle in -3.0..3.0f64,
            axis in vector(3),
        ) {
            prop_assume!(!c.is_reversal());
            let rotated = if c.p_tilde1.len() == 2 {
                CornerData::new(rotate2(&c.p_tilde1, angle), rotate2(&c.p_tilde2, angle), 0.0).unwrap()
            } else {
                let n = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
                prop_assume!(n > 1e-3);
                let k = [axis[0] / n, axis[1] / n, axis[2] / n];
                CornerData::new(rotate3(&c.p_tilde1, k, angle), rotate3(&c.p_tilde2, k, angle), 0.0).unwrap()
            };
            let t = u * eps;
            let (k0, k1) = (
                exact_corner_curvature(&c, eps, t, &[]).unwrap(),
                exact_corner_curvature(&rotated, eps, t, &[]).unwrap(),
            );
            prop_assert!((k0 - k1).abs() <= 1e-12 * k0.max(1.0), "{k0} vs {k1}");
            let (b0, b1) = (curvature_upper_bound(&c, eps).unwrap(), curvature_upper_bound(&rotated, eps).unwrap());
            prop_assert!((b0 - b1).abs() <= 1e-12 * b0.max(1.0), "{b0} vs {b1}");
        }

        #[test]
        fn budget_round_trip(c in corner(), kappa in 0.1..100.0f64) {
            prop_assume!(!c.is_reversal());
            let eps = solve_epsilon_for_budget(&c, kappa).unwrap();
            if eps > 0.0 {
                let back = curvature_upper_bound(&c, eps).unwrap();
                prop_assert!((back - kappa).abs() <= 1e-12 * kappa, "{back} vs {kappa}");
            }
        }
    }
}
