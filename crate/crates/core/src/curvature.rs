//! Corner curvature of mollified polylines and per-corner scale planning.
//!
//! Near an isolated corner with incoming segment vector `P̃₁` and outgoing
//! `P̃₂`, the smoothed path has `F' = A₁P̃₁ + A₂P̃₂` with kernel masses
//! `A₁ + A₂ = 1` and `F'' = φ_ε(t - knot)(P̃₂ - P̃₁)`, so its curvature is
//! `φ_ε(t - knot)·‖P̃₂ ∧ P̃₁‖ / ‖A₁P̃₁ + A₂P̃₂‖³`. Bounding the kernel by
//! `‖φ‖∞/ε` and the speed from below by the minimum over the segment
//! `[P̃₁, P̃₂]` gives a `t`-independent bound that is linear in `1/ε`, which
//! is what lets the planner solve for `ε` in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dot, linspace, norm2, wedge_norm};
use crate::kernel::BumpKernel;
use crate::paths::{ExtendedPath, WaypointPath};
use crate::smoothing::MollifiedPath;

/// Relative wedge size below which two segment vectors count as parallel.
const PARALLEL_TOLERANCE: f64 = 1e-12;

/// The two segment vectors meeting at a knot.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerData {
    pub p_tilde1: Vec<f64>,
    pub p_tilde2: Vec<f64>,
    pub knot: f64,
}

impl CornerData {
    pub fn new(p_tilde1: Vec<f64>, p_tilde2: Vec<f64>, knot: f64) -> Result<Self> {
        if p_tilde1.len() != p_tilde2.len() {
            return Err(Error::DimensionMismatch {
                expected: p_tilde1.len(),
                got: p_tilde2.len(),
            });
        }
        if !(2..=3).contains(&p_tilde1.len()) {
            return Err(Error::InvalidArgument(format!(
                "corners must be 2D or 3D, got dimension {}",
                p_tilde1.len()
            )));
        }
        if norm2(&p_tilde1) == 0.0 || norm2(&p_tilde2) == 0.0 {
            return Err(Error::InvalidArgument("corner segment vectors must be nonzero".into()));
        }
        if !knot.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "corner knot must be finite, got {knot}"
            )));
        }
        Ok(Self {
            p_tilde1,
            p_tilde2,
            knot,
        })
    }

    /// Corner at waypoint `vertex`; wraps around for closed paths.
    pub fn at_vertex(path: &WaypointPath, vertex: usize) -> Result<Self> {
        let n = path.points().len();
        let valid = if path.is_closed() {
            vertex < n
        } else {
            vertex >= 1 && vertex + 1 < n
        };
        if !valid {
            return Err(Error::InvalidArgument(format!(
                "waypoint {vertex} is not a corner of this path"
            )));
        }
        let incoming = (vertex + path.segment_count() - 1) % path.segment_count();
        Self::new(
            path.segment_vector(incoming),
            path.segment_vector(vertex),
            vertex as f64,
        )
    }

    fn wedge(&self) -> f64 {
        wedge_norm(&self.p_tilde2, &self.p_tilde1).expect("validated dimensions")
    }

    fn is_parallel(&self) -> bool {
        self.wedge() <= PARALLEL_TOLERANCE * norm2(&self.p_tilde1) * norm2(&self.p_tilde2)
    }

    /// Parallel but pointing in opposite directions: the path doubles back.
    pub fn is_reversal(&self) -> bool {
        self.is_parallel() && dot(&self.p_tilde1, &self.p_tilde2) < 0.0
    }
}

/// Kernel masses `(A₁, A₂)` falling on the incoming and outgoing segments.
pub fn corner_weights(t: f64, eps: f64, knot: f64) -> Result<(f64, f64)> {
    let a2 = BumpKernel::standard().cdf(t - knot, eps)?;
    Ok((1.0 - a2, a2))
}

/// Curvature of the mollified two-segment path at `t`.
///
/// `other_knots` lists the remaining knots of the enclosing path; the closed
/// form is only valid when none of them lies within `eps` of `t`.
pub fn exact_corner_curvature(corner: &CornerData, eps: f64, t: f64, other_knots: &[f64]) -> Result<f64> {
    let kernel = BumpKernel::standard();
    let weight = kernel.eval_scaled(t - corner.knot, eps)?;
    if let Some(&neighbor) = other_knots.iter().find(|&&k| k != corner.knot && (k - t).abs() < eps) {
        return Err(Error::CornerNotIsolated {
            knot: corner.knot,
            neighbor,
            eps,
            t,
        });
    }
    if weight == 0.0 {
        return Ok(0.0);
    }
    let (a1, a2) = corner_weights(t, eps, corner.knot)?;
    let velocity: Vec<f64> = corner
        .p_tilde1
        .iter()
        .zip(&corner.p_tilde2)
        .map(|(p1, p2)| a1 * p1 + a2 * p2)
        .collect();
    let speed = norm2(&velocity);
    let wedge = corner.wedge();
    if wedge == 0.0 {
        return Ok(0.0);
    }
    Ok(weight * wedge / (speed * speed * speed))
}

/// `‖φ‖∞·‖P̃₁ ∧ P̃₂‖·M(P̃₁, P̃₂)`, the bound with the `1/ε` factor removed.
fn bound_numerator(corner: &CornerData) -> f64 {
    if corner.is_reversal() {
        return f64::INFINITY;
    }
    let wedge = corner.wedge();
    if wedge == 0.0 {
        return 0.0;
    }
    let (p1, p2) = (&corner.p_tilde1, &corner.p_tilde2);
    let diff: Vec<f64> = p2.iter().zip(p1).map(|(b, a)| b - a).collect();
    let s_bar = dot(&diff, p2) / dot(&diff, &diff);
    let m = if (0.0..=1.0).contains(&s_bar) {
        let closest: Vec<f64> = p1.iter().zip(p2).map(|(a, b)| s_bar * a + (1.0 - s_bar) * b).collect();
        norm2(&closest).powi(-3)
    } else {
        norm2(p1).powi(-3).max(norm2(p2).powi(-3))
    };
    BumpKernel::standard().sup_norm() * wedge * m
}

/// Upper bound on the corner's curvature valid for every `t`.
///
/// Infinite for reversal corners, whose smoothed speed passes through zero.
pub fn curvature_upper_bound(corner: &CornerData, eps: f64) -> Result<f64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    Ok(bound_numerator(corner) / eps)
}

/// Smallest `ε` whose curvature bound meets `kappa_max`; zero for straight corners.
pub fn solve_epsilon_for_budget(corner: &CornerData, kappa_max: f64) -> Result<f64> {
    if !(kappa_max > 0.0) || !kappa_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "curvature budget must be positive and finite, got {kappa_max}"
        )));
    }
    let numerator = bound_numerator(corner);
    if numerator.is_infinite() {
        return Err(Error::InvalidPath(format!(
            "corner at knot {} reverses direction; no scale bounds its curvature",
            corner.knot
        )));
    }
    Ok(numerator / kappa_max)
}

/// Allowed turning radius grows linearly with speed; the budget is its reciprocal.
pub fn speed_to_curvature_budget(v: f64, r_min: f64, r_max: f64, v_max: f64) -> Result<f64> {
    if !(v_max > 0.0) || !v_max.is_finite() {
        return Err(Error::InvalidArgument(format!("v_max must be positive, got {v_max}")));
    }
    if !(0.0..=v_max).contains(&v) {
        return Err(Error::InvalidArgument(format!("speed {v} outside [0, {v_max}]")));
    }
    if !(r_min > 0.0 && r_min <= r_max && r_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "radii must satisfy 0 < r_min <= r_max, got {r_min}, {r_max}"
        )));
    }
    let radius = r_min + v / v_max * (r_max - r_min);
    Ok(1.0 / radius)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanOptions {
    /// Floor on the global scale so straight paths still get a smooth kernel.
    pub eps_min: f64,
    /// Bisect the global scale against sampled curvature when the plan is not exact.
    pub refine: bool,
    /// Curvature samples per unit parameter used by refinement.
    pub samples_per_unit: usize,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            eps_min: 1e-4,
            refine: false,
            samples_per_unit: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerEpsilon {
    /// Waypoint index of the corner.
    pub index: usize,
    pub epsilon: f64,
    /// Curvature bound of this corner at the plan's global scale.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonPlan {
    pub per_corner: Vec<CornerEpsilon>,
    pub global_epsilon: f64,
    /// Every corner scale is below one half, so no window sees three segments.
    pub exact: bool,
    pub budget: f64,
    /// Set when refinement replaced the closed-form global scale.
    pub refined: bool,
    pub warnings: Vec<String>,
}

pub fn corners(path: &WaypointPath) -> Result<Vec<CornerData>> {
    let vertices: Vec<usize> = if path.is_closed() {
        (0..path.points().len()).collect()
    } else {
        (1..path.points().len() - 1).collect()
    };
    vertices.into_iter().map(|v| CornerData::at_vertex(path, v)).collect()
}

/// Per-corner scales for a curvature budget, and the global scale covering all of them.
pub fn plan_epsilons(path: &WaypointPath, kappa_max: f64, options: &PlanOptions) -> Result<EpsilonPlan> {
    if path.segment_count() < 2 {
        return Err(Error::InvalidPath("planning needs at least two segments".into()));
    }
    if !(options.eps_min > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps_min must be positive, got {}",
            options.eps_min
        )));
    }
    let corners = corners(path)?;
    let epsilons = corners
        .iter()
        .map(|c| solve_epsilon_for_budget(c, kappa_max))
        .collect::<Result<Vec<_>>>()?;
    let exact = epsilons.iter().all(|&e| e < 0.5);
    let mut global = epsilons.iter().copied().fold(options.eps_min, f64::max);
    let mut warnings = Vec::new();
    let mut refined = false;
    if !exact {
        warnings.push(format!(
            "some corner scale is >= 0.5: neighbouring segments overlap the kernel window and \
             the curvature bound is only an approximation (global eps {global:.6})"
        ));
        if options.refine {
            global = refine_global_epsilon(path, kappa_max, global, options)?;
            refined = true;
        }
    }
    let per_corner = corners
        .iter()
        .zip(&epsilons)
        .map(|(c, &epsilon)| {
            Ok(CornerEpsilon {
                index: c.knot as usize,
                epsilon,
                bound: curvature_upper_bound(c, global)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EpsilonPlan {
        per_corner,
        global_epsilon: global,
        exact,
        budget: kappa_max,
        refined,
        warnings,
    })
}

/// Maximum curvature of the uniformly mollified path on a grid with
/// `samples_per_unit` points per unit parameter, plus every knot.
pub fn sampled_max_curvature(path: &WaypointPath, eps: f64, samples_per_unit: usize) -> Result<f64> {
    let mollified = MollifiedPath::uniform(ExtendedPath::natural(path.clone())?, eps)?;
    let end = path.parameter_end();
    let count = (end * samples_per_unit as f64).ceil() as usize + 1;
    let mut ts = linspace(0.0, end, count.max(2));
    ts.extend((0..=path.segment_count()).map(|k| k as f64));
    let rows = mollified.sample_with_derivatives(&ts)?;
    Ok(rows.iter().filter_map(|r| r.curvature).fold(0.0, f64::max))
}

const GROWTH_STEPS: usize = 40;
const BISECTION_STEPS: usize = 40;

fn refine_global_epsilon(path: &WaypointPath, kappa_max: f64, start: f64, options: &PlanOptions) -> Result<f64> {
    let feasible =
        |eps: f64| -> Result<bool> { Ok(sampled_max_curvature(path, eps, options.samples_per_unit)? <= kappa_max) };
    let mut hi = start;
    let mut grown = 0;
    while !feasible(hi)? {
        grown += 1;
        if grown > GROWTH_STEPS {
            return Err(Error::NoConvergence("epsilon refinement", GROWTH_STEPS));
        }
        hi *= 1.5;
    }
    let mut lo = options.eps_min;
    if feasible(lo)? {
        return Ok(lo);
    }
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= 1e-6 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn right_angle() -> CornerData {
        CornerData::new(vec![1.0, 0.0], vec![0.0, 1.0], 1.0).unwrap()
    }

    fn sup() -> f64 {
        BumpKernel::standard().sup_norm()
    }

    #[test]
    fn weights_landmarks() {
        let (a1, a2) = corner_weights(1.0, 0.3, 1.0).unwrap();
        assert_eq!((a1, a2), (0.5, 0.5));
        assert_eq!(corner_weights(0.7, 0.3, 1.0).unwrap(), (1.0, 0.0));
        assert_eq!(corner_weights(1.3, 0.3, 1.0).unwrap(), (0.0, 1.0));
    }

    #[test]
    fn weights_match_defining_integrals() {
        let (eps, knot) = (0.4, 2.0);
        let t = knot + eps / 2.0;
        let k = BumpKernel::standard();
        let spec = QuadratureSpec::new(1e-13, 50).unwrap();
        // A₁(t) = ∫_{-∞}^{knot} φ_ε(t - s) ds over the kernel's support.
        let a1 = integrate(|s| k.eval_scaled(t - s, eps).unwrap(), t - eps, knot, &[], &spec).unwrap();
        let a2 = integrate(|s| k.eval_scaled(t - s, eps).unwrap(), knot, t + eps, &[], &spec).unwrap();
        let (w1, w2) = corner_weights(t, eps, knot).unwrap();
        assert_abs_diff_eq!(w1, a1, epsilon = 1e-9);
        assert_abs_diff_eq!(w2, a2, epsilon = 1e-9);
    }

    #[test]
    fn straight_corner_has_zero_curvature() {
        let c = CornerData::new(vec![1.0, 1.0], vec![2.0, 2.0], 1.0).unwrap();
        for &t in &[0.8, 1.0, 1.05] {
            assert_eq!(exact_corner_curvature(&c, 0.25, t, &[]).unwrap(), 0.0);
        }
        assert_eq!(curvature_upper_bound(&c, 0.25).unwrap(), 0.0);
        assert_eq!(solve_epsilon_for_budget(&c, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn equal_segments_bound_is_zero() {
        let c = CornerData::new(vec![0.5, -0.2, 1.0], vec![0.5, -0.2, 1.0], 1.0).unwrap();
        assert_eq!(curvature_upper_bound(&c, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn outside_window_is_zero() {
        assert_eq!(exact_corner_curvature(&right_angle(), 0.25, 1.25, &[]).unwrap(), 0.0);
        assert_eq!(exact_corner_curvature(&right_angle(), 0.25, 0.1, &[]).unwrap(), 0.0);
    }

    #[test]
    fn right_angle_closed_form_value() {
        let eps = 0.25;
        let k = exact_corner_curvature(&right_angle(), eps, 1.0, &[0.0, 2.0]).unwrap();
        let expected = BumpKernel::standard().eval(0.0) / eps / 0.5f64.sqrt().powi(3);
        assert_relative_eq!(k, expected, max_relative = 1e-14);
    }

    #[test]
    fn non_isolated_corner_rejected() {
        let err = exact_corner_curvature(&right_angle(), 0.6, 0.5, &[0.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::CornerNotIsolated { .. }));
    }

    #[test]
    fn right_angle_bound() {
        let b = curvature_upper_bound(&right_angle(), 0.25).unwrap();
        assert_relative_eq!(b, 4.0 * sup() * 2f64.powf(1.5), max_relative = 1e-14);
        let grid_max = linspace(0.75, 1.25, 4001)
            .into_iter()
            .map(|t| exact_corner_curvature(&right_angle(), 0.25, t, &[]).unwrap())
            .fold(0.0, f64::max);
        assert!(b >= grid_max);
        // Equal lengths: the bound is attained at the knot.
        assert_relative_eq!(b, grid_max, max_relative = 1e-12);
    }

    #[test]
    fn bound_uses_endpoint_when_s_bar_outside() {
        // P̃₂ is long and nearly aligned with P̃₁: the minimum speed is at P̃₁.
        let c = CornerData::new(vec![1.0, 0.0], vec![3.0, 0.5], 1.0).unwrap();
        let diff = [2.0, 0.5];
        let s_bar = (diff[0] * 3.0 + diff[1] * 0.5) / (diff[0] * diff[0] + diff[1] * diff[1]);
        assert!(s_bar > 1.0);
        let b = curvature_upper_bound(&c, 1.0).unwrap();
        assert_relative_eq!(b, sup() * 0.5 * 1.0, max_relative = 1e-14);
    }

    #[test]
    fn solve_and_round_trip() {
        let eps = solve_epsilon_for_budget(&right_angle(), 10.0).unwrap();
        assert_relative_eq!(eps, sup() * 2f64.powf(1.5) / 10.0, max_relative = 1e-14);
        assert_relative_eq!(
            curvature_upper_bound(&right_angle(), eps).unwrap(),
            10.0,
            max_relative = 1e-12
        );
        let half = solve_epsilon_for_budget(&right_angle(), 20.0).unwrap();
        assert_relative_eq!(half, eps / 2.0, max_relative = 1e-14);
        assert!(solve_epsilon_for_budget(&right_angle(), 0.0).is_err());
    }

    #[test]
    fn reversal_corner() {
        let c = CornerData::new(vec![1.0, 0.0], vec![-2.0, 0.0], 1.0).unwrap();
        assert!(c.is_reversal());
        assert_eq!(curvature_upper_bound(&c, 0.3).unwrap(), f64::INFINITY);
        assert!(solve_epsilon_for_budget(&c, 1.0).is_err());
    }

    #[test]
    fn rotation_invariance() {
        let (s, c) = 0.7f64.sin_cos();
        let rot = |v: &[f64]| vec![c * v[0] - s * v[1], s * v[0] + c * v[1]];
        let a = CornerData::new(vec![1.2, 0.3], vec![-0.4, 0.9], 1.0).unwrap();
        let b = CornerData::new(rot(&a.p_tilde1), rot(&a.p_tilde2), 1.0).unwrap();
        for &t in &[0.85, 1.0, 1.1] {
            assert_relative_eq!(
                exact_corner_curvature(&a, 0.3, t, &[]).unwrap(),
                exact_corner_curvature(&b, 0.3, t, &[]).unwrap(),
                max_relative = 1e-12
            );
        }
        assert_relative_eq!(
            curvature_upper_bound(&a, 0.3).unwrap(),
            curvature_upper_bound(&b, 0.3).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn speed_budget() {
        assert_relative_eq!(speed_to_curvature_budget(0.0, 1.0, 3.0, 2.0).unwrap(), 1.0);
        assert_relative_eq!(speed_to_curvature_budget(2.0, 1.0, 3.0, 2.0).unwrap(), 1.0 / 3.0);
        assert_relative_eq!(speed_to_curvature_budget(1.0, 1.0, 3.0, 2.0).unwrap(), 0.5);
        assert!(speed_to_curvature_budget(2.5, 1.0, 3.0, 2.0).is_err());
        assert!(speed_to_curvature_budget(-0.1, 1.0, 3.0, 2.0).is_err());
        assert!(speed_to_curvature_budget(1.0, 0.0, 3.0, 2.0).is_err());
        assert!(speed_to_curvature_budget(1.0, 4.0, 3.0, 2.0).is_err());
    }

    #[test]
    fn single_corner_plan_is_exact() {
        let p = WaypointPath::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]], false).unwrap();
        let plan = plan_epsilons(&p, 10.0, &PlanOptions::default()).unwrap();
        assert!(plan.exact);
        assert_eq!(plan.per_corner.len(), 1);
        assert_eq!(plan.per_corner[0].index, 1);
        assert_eq!(plan.global_epsilon, plan.per_corner[0].epsilon);
        assert_relative_eq!(plan.per_corner[0].bound, 10.0, max_relative = 1e-12);
        assert!(plan.warnings.is_empty());
    }

    #[test]
    fn collinear_plan_uses_floor() {
        let p = WaypointPath::new(
            vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0], vec![4.0, 4.0]],
            false,
        )
        .unwrap();
        let plan = plan_epsilons(&p, 1.0, &PlanOptions::default()).unwrap();
        assert!(plan.exact);
        assert!(plan.per_corner.iter().all(|c| c.epsilon == 0.0));
        assert_eq!(plan.global_epsilon, 1e-4);
    }

    #[test]
    fn closed_square_plan_is_symmetric() {
        let p = WaypointPath::new(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            true,
        )
        .unwrap();
        let plan = plan_epsilons(&p, 10.0, &PlanOptions::default()).unwrap();
        assert_eq!(plan.per_corner.len(), 4);
        let e0 = solve_epsilon_for_budget(&right_angle(), 10.0).unwrap();
        for c in &plan.per_corner {
            assert_relative_eq!(c.epsilon, e0, max_relative = 1e-14);
        }
        assert_eq!(
            plan.per_corner.iter().map(|c| c.index).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn tight_budget_warns_and_refines() {
        let p = WaypointPath::new(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![2.0, 1.0]],
            false,
        )
        .unwrap();
        let kappa = 1.5;
        let plan = plan_epsilons(&p, kappa, &PlanOptions::default()).unwrap();
        assert!(!plan.exact);
        assert!(!plan.refined);
        assert_eq!(plan.warnings.len(), 1);
        let options = PlanOptions {
            refine: true,
            ..PlanOptions::default()
        };
        let refined = plan_epsilons(&p, kappa, &options).unwrap();
        assert!(refined.refined);
        let k = sampled_max_curvature(&p, refined.global_epsilon, options.samples_per_unit).unwrap();
        assert!(k <= kappa, "{k} > {kappa}");
    }

    #[test]
    fn plan_rejects_bad_input() {
        let p = WaypointPath::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]], false).unwrap();
        assert!(plan_epsilons(&p, 1.0, &PlanOptions::default()).is_err());
        let p = WaypointPath::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.0]], false).unwrap();
        assert!(plan_epsilons(&p, 1.0, &PlanOptions::default()).is_err());
    }
}
