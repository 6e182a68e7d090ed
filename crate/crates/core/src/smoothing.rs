//! Componentwise convolution of an extended path with scaled bump kernels.
//!
//! Component `i` of the smoothed path is
//! `F_i(t) = ∫_{-ε_i}^{ε_i} f_i(t - s) φ_{ε_i}(s) ds`, and its derivatives
//! move onto the kernel: `F_i^{(k)}(t) = ∫ f_i(t - s) φ_{ε_i}^{(k)}(s) ds`.
//! The source path is never differentiated.

use rayon::prelude::*;

use crate::curvature::CornerData;
use crate::error::{Error, Result};
use crate::geometry::{wedge_norm, Curve};
use crate::kernel::{BumpKernel, ScaledKernel};
use crate::paths::ExtendedPath;
use crate::quadrature::{integrate, QuadratureSpec};

/// Default absolute tolerance of every convolution integral.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct MollifiedPath {
    source: ExtendedPath,
    kernels: Vec<ScaledKernel>,
    spec: QuadratureSpec,
}

impl MollifiedPath {
    /// One scale per spatial component.
    pub fn new(source: ExtendedPath, epsilons: &[f64]) -> Result<Self> {
        if epsilons.len() != source.dimension() {
            return Err(Error::DimensionMismatch {
                expected: source.dimension(),
                got: epsilons.len(),
            });
        }
        let base = *BumpKernel::standard();
        let kernels = epsilons
            .iter()
            .map(|&e| ScaledKernel::new(base, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source,
            kernels,
            spec: QuadratureSpec::new(DEFAULT_TOLERANCE, 40)?,
        })
    }

    /// Same scale on every component.
    pub fn uniform(source: ExtendedPath, epsilon: f64) -> Result<Self> {
        let eps = vec![epsilon; source.dimension()];
        Self::new(source, &eps)
    }

    pub fn with_quadrature(mut self, spec: QuadratureSpec) -> Self {
        self.spec = spec;
        self
    }

    pub fn source(&self) -> &ExtendedPath {
        &self.source
    }

    pub fn epsilons(&self) -> Vec<f64> {
        self.kernels.iter().map(ScaledKernel::epsilon).collect()
    }

    pub fn max_epsilon(&self) -> f64 {
        self.kernels.iter().map(ScaledKernel::epsilon).fold(0.0, f64::max)
    }

    pub fn dimension(&self) -> usize {
        self.kernels.len()
    }

    /// `F_i^{(order)}(t)` for `order` in `0..=2`.
    pub fn component(&self, i: usize, t: f64, order: u8) -> Result<f64> {
        if order > 2 {
            return Err(Error::InvalidArgument(format!(
                "derivative order must be 0, 1 or 2, got {order}"
            )));
        }
        let kernel = &self.kernels[i];
        let eps = kernel.epsilon();
        let mut knots = Vec::new();
        self.source.breakpoints_in(t - eps, t + eps, &mut knots);
        // Knot k of the source sits at s = t - k in the kernel variable.
        for k in knots.iter_mut() {
            *k = t - *k;
        }
        // The k-th derivative integral scales like |f| / ε^k; an absolute
        // tolerance is only meaningful relative to that.
        let scale = self.source.eval_component(i, t).abs().max(1.0) / eps.powi(order as i32);
        let spec = self.spec.with_tolerance(self.spec.tolerance * scale.max(1.0))?;
        integrate(
            |s| self.source.eval_component(i, t - s) * kernel.derivative(s, order),
            -eps,
            eps,
            &knots,
            &spec,
        )
    }

    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        (0..self.dimension()).map(|i| self.component(i, t, 0)).collect()
    }

    /// First or second derivative vector at `t`.
    pub fn derivative(&self, t: f64, order: u8) -> Result<Vec<f64>> {
        if !(1..=2).contains(&order) {
            return Err(Error::InvalidArgument(format!(
                "derivative order must be 1 or 2, got {order}"
            )));
        }
        (0..self.dimension()).map(|i| self.component(i, t, order)).collect()
    }

    /// `‖F'' ∧ F'‖ / ‖F'‖³` for 2D and 3D paths.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let d1 = self.derivative(t, 1)?;
        let d2 = self.derivative(t, 2)?;
        curvature_from_derivatives(&d1, &d2)
    }

    /// Positions at every parameter, evaluated in parallel, in input order.
    pub fn sample(&self, ts: &[f64]) -> Result<Vec<Vec<f64>>> {
        ts.par_iter().map(|&t| self.eval(t)).collect()
    }

    /// Position, first derivative and curvature at every parameter.
    pub fn sample_with_derivatives(&self, ts: &[f64]) -> Result<Vec<SampleRow>> {
        ts.par_iter()
            .map(|&t| {
                let position = self.eval(t)?;
                let d1 = self.derivative(t, 1)?;
                let kappa = if self.dimension() >= 2 {
                    let d2 = self.derivative(t, 2)?;
                    Some(curvature_from_derivatives(&d1, &d2)?)
                } else {
                    None
                };
                Ok(SampleRow {
                    t,
                    position,
                    velocity: d1,
                    curvature: kappa,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub t: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    /// `None` for one-dimensional paths.
    pub curvature: Option<f64>,
}

/// Curvature of a regular curve from its first two derivatives.
pub fn curvature_from_derivatives(d1: &[f64], d2: &[f64]) -> Result<f64> {
    let speed = d1.iter().map(|x| x * x).sum::<f64>().sqrt();
    let w = wedge_norm(d2, d1)?;
    if speed == 0.0 {
        return Ok(if w == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(w / (speed * speed * speed))
}

/// Closed form `F''(t) = φ_ε(t - knot)(P̃₂ - P̃₁)` of a mollified two-segment corner.
pub fn second_derivative_two_segment(corner: &CornerData, eps: f64, t: f64) -> Result<Vec<f64>> {
    let weight = BumpKernel::standard().eval_scaled(t - corner.knot, eps)?;
    Ok(corner
        .p_tilde1
        .iter()
        .zip(&corner.p_tilde2)
        .map(|(a, b)| weight * (b - a))
        .collect())
}

impl Curve for MollifiedPath {
    fn dimension(&self) -> usize {
        self.kernels.len()
    }

    fn point(&self, t: f64) -> Result<Vec<f64>> {
        self.eval(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{Domain, Extension, ParametricPath, WaypointPath};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn affine(a: f64, b: f64) -> ExtendedPath {
        ExtendedPath::new(
            ParametricPath::scalar(move |t| a * t + b, Domain::EntireLine),
            Extension::Clamp,
        )
        .unwrap()
    }

    fn abs_path() -> ExtendedPath {
        ExtendedPath::new(
            ParametricPath::scalar(f64::abs, Domain::EntireLine).with_kinks([0.0]),
            Extension::Clamp,
        )
        .unwrap()
    }

    /// Dense trapezoid rule for ∫ f(t - s) φ_ε(s) ds.
    fn trapezoid_convolution(f: impl Fn(f64) -> f64, t: f64, eps: f64, n: usize) -> f64 {
        let k = BumpKernel::standard();
        let h = 2.0 * eps / n as f64;
        (0..=n)
            .map(|j| {
                let s = -eps + j as f64 * h;
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                w * f(t - s) * k.eval_scaled(s, eps).unwrap()
            })
            .sum::<f64>()
            * h
    }

    #[test]
    fn affine_source_is_reproduced() {
        let m = MollifiedPath::uniform(affine(1.7, -0.3), 0.8).unwrap();
        for &t in &[-2.0, 0.0, 0.4, 3.3] {
            assert_abs_diff_eq!(m.eval(t).unwrap()[0], 1.7 * t - 0.3, epsilon = 1e-9);
            assert_abs_diff_eq!(m.derivative(t, 1).unwrap()[0], 1.7, epsilon = 1e-8);
            assert_abs_diff_eq!(m.derivative(t, 2).unwrap()[0], 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn constant_source_is_reproduced() {
        let m = MollifiedPath::uniform(affine(0.0, 4.5), 0.3).unwrap();
        assert_abs_diff_eq!(m.eval(1.0).unwrap()[0], 4.5, epsilon = 1e-12);
    }

    #[test]
    fn abs_at_origin_matches_trapezoid_oracle() {
        let m = MollifiedPath::uniform(abs_path(), 1.0).unwrap();
        let v = m.eval(0.0).unwrap()[0];
        let oracle = trapezoid_convolution(f64::abs, 0.0, 1.0, 400_000);
        assert!(v > 0.0);
        assert_abs_diff_eq!(v, oracle, epsilon = 1e-8);
        // ∫|s|φ(s)ds, 30-digit reference.
        assert_abs_diff_eq!(v, 0.334_453_997_709_975, epsilon = 1e-12);
    }

    #[test]
    fn derivative_inside_segment_is_segment_vector() {
        let w = WaypointPath::new(vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![2.0, 3.0]], false).unwrap();
        let m = MollifiedPath::uniform(ExtendedPath::natural(w).unwrap(), 0.3).unwrap();
        let d = m.derivative(0.5, 1).unwrap();
        assert_abs_diff_eq!(d[0], 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(d[1], 1.0, epsilon = 1e-10);
        let p = m.eval(0.5).unwrap();
        assert_abs_diff_eq!(p[0], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-10);
    }

    #[test]
    fn closed_form_second_derivative_matches_engine() {
        let w = WaypointPath::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]], false).unwrap();
        let m = MollifiedPath::uniform(ExtendedPath::natural(w).unwrap(), 0.5).unwrap();
        let corner = CornerData::new(vec![1.0, 0.0], vec![0.0, 1.0], 1.0).unwrap();
        let closed = second_derivative_two_segment(&corner, 0.5, 1.0).unwrap();
        let phi0 = 2.0 * BumpKernel::standard().eval(0.0);
        assert_relative_eq!(closed[0], -phi0);
        assert_relative_eq!(closed[1], phi0);
        let engine = m.derivative(1.0, 2).unwrap();
        assert_abs_diff_eq!(engine[0], closed[0], epsilon = 1e-8);
        assert_abs_diff_eq!(engine[1], closed[1], epsilon = 1e-8);
    }

    #[test]
    fn closed_form_second_derivative_edge_cases() {
        let corner = CornerData::new(vec![1.0, 0.0], vec![0.0, 1.0], 1.0).unwrap();
        assert_eq!(
            second_derivative_two_segment(&corner, 0.25, 1.3).unwrap(),
            vec![0.0, 0.0]
        );
        let straight = CornerData::new(vec![1.0, 2.0], vec![1.0, 2.0], 1.0).unwrap();
        for &t in &[0.8, 1.0, 1.1] {
            assert_eq!(
                second_derivative_two_segment(&straight, 0.25, t).unwrap(),
                vec![0.0, 0.0]
            );
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let w = WaypointPath::new(
            vec![vec![0.0, 0.0], vec![1.0, 0.2], vec![1.4, 1.5], vec![0.3, 2.0]],
            false,
        )
        .unwrap();
        let m = MollifiedPath::new(ExtendedPath::natural(w).unwrap(), &[0.35, 0.6]).unwrap();
        let h = 1e-5;
        for &t in &[0.7, 1.0, 1.3, 1.9, 2.2] {
            let fd1: Vec<f64> = m
                .eval(t + h)
                .unwrap()
                .iter()
                .zip(m.eval(t - h).unwrap())
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect();
            let d1 = m.derivative(t, 1).unwrap();
            let fd2: Vec<f64> = m
                .derivative(t + h, 1)
                .unwrap()
                .iter()
                .zip(m.derivative(t - h, 1).unwrap())
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect();
            let d2 = m.derivative(t, 2).unwrap();
            for c in 0..2 {
                assert_relative_eq!(d1[c], fd1[c], max_relative = 1e-5, epsilon = 1e-9);
                assert_relative_eq!(d2[c], fd2[c], max_relative = 1e-5, epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn invalid_construction() {
        assert!(MollifiedPath::new(abs_path(), &[0.0]).is_err());
        assert!(MollifiedPath::new(abs_path(), &[-0.1]).is_err());
        assert!(MollifiedPath::new(abs_path(), &[0.1, 0.1]).is_err());
        let m = MollifiedPath::uniform(abs_path(), 0.5).unwrap();
        assert!(m.derivative(0.0, 3).is_err());
        assert!(m.derivative(0.0, 0).is_err());
    }

    #[test]
    fn curvature_of_straight_line_is_zero() {
        let w = WaypointPath::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]], false).unwrap();
        let m = MollifiedPath::uniform(ExtendedPath::natural(w).unwrap(), 0.4).unwrap();
        for &t in &[0.0, 0.7, 1.0, 1.2, 2.0] {
            assert!(m.curvature(t).unwrap() <= 1e-9);
        }
    }
}
