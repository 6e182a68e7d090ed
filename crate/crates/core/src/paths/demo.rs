//! Fixed demonstration paths.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use super::{Domain, ParametricPath, WaypointPath};

/// Radius of the heart curve in polar form.
fn heart_radius(t: f64) -> f64 {
    let s = t.sin();
    2.0 - 2.0 * s + s * t.cos().abs().sqrt() / (s + 1.4)
}

/// The closed "heart" curve `r(t)·(cos t, sin t)` on `[0, 2π]`.
///
/// `√|cos t|` makes the curve non-differentiable at `t = π/2` (the inward
/// cusp at the origin) and `t = 3π/2` (the bottom tip); both are declared as
/// kinks. Extend it with [`Extension::Periodic`](super::Extension::Periodic).
pub fn heart_path() -> ParametricPath {
    ParametricPath::new(
        vec![
            Arc::new(|t: f64| heart_radius(t) * t.cos()),
            Arc::new(|t: f64| heart_radius(t) * t.sin()),
        ],
        Domain::Interval { start: 0.0, end: TAU },
    )
    .expect("two components")
    .with_kinks([FRAC_PI_2, PI + FRAC_PI_2])
}

/// Monotone stair function `Σ_{k<steps} 1_{t > k}` on `[-1, steps]`.
///
/// # Panics
///
/// Panics if `steps` is zero.
pub fn staircase_path(steps: usize) -> ParametricPath {
    assert!(steps >= 1, "a staircase needs at least one step");
    let n = steps as f64;
    ParametricPath::scalar(
        move |t: f64| {
            if t <= 0.0 {
                0.0
            } else {
                t.ceil().min(n)
            }
        },
        Domain::Interval { start: -1.0, end: n },
    )
    .with_kinks((0..steps).map(|k| k as f64))
}

/// Open tour of the unit cube's vertices along its edges (a Gray code), so
/// every segment has unit length and the polyline length is 7.
pub const CUBE_TOUR: [[f64; 3]; 8] = [
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [1.0, 1.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 1.0, 1.0],
    [1.0, 1.0, 1.0],
    [1.0, 0.0, 1.0],
    [0.0, 0.0, 1.0],
];

pub fn cube_path() -> WaypointPath {
    WaypointPath::new(CUBE_TOUR.iter().map(|p| p.to_vec()).collect(), false).expect("cube tour is a valid path")
}

/// Piecewise-linear function that is convex on `(-1/2, 1/2)` but whose
/// mollification at large scale is not: `0` for `x < 0`, `x` on `[0, 1/2]`,
/// `1 - x` beyond.
pub fn local_convexity_counterexample() -> ParametricPath {
    ParametricPath::scalar(
        |x: f64| {
            if x < 0.0 {
                0.0
            } else if x <= 0.5 {
                x
            } else {
                1.0 - x
            }
        },
        Domain::EntireLine,
    )
    .with_kinks([0.0, 0.5])
}
