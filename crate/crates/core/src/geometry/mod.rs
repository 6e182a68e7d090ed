//! Wedge norms, polyline lengths and convex-hull containment.

mod hull;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::paths::{ExtendedPath, ParametricPath, WaypointPath};

pub use hull::{convex_hull_2d, convex_hull_contains, ConvexHull};

/// Anything that can be evaluated at a parameter.
pub trait Curve: Sync {
    fn dimension(&self) -> usize;
    fn point(&self, t: f64) -> Result<Vec<f64>>;
}

impl Curve for ExtendedPath {
    fn dimension(&self) -> usize {
        ExtendedPath::dimension(self)
    }

    fn point(&self, t: f64) -> Result<Vec<f64>> {
        Ok(self.eval(t))
    }
}

impl Curve for WaypointPath {
    fn dimension(&self) -> usize {
        WaypointPath::dimension(self)
    }

    fn point(&self, t: f64) -> Result<Vec<f64>> {
        Ok(self.eval(t))
    }
}

impl Curve for ParametricPath {
    fn dimension(&self) -> usize {
        ParametricPath::dimension(self)
    }

    fn point(&self, t: f64) -> Result<Vec<f64>> {
        Ok(self.eval(t))
    }
}

/// Adapts a closure into a [`Curve`].
pub struct FnCurve<F> {
    dimension: usize,
    f: F,
}

impl<F> FnCurve<F>
where
    F: Fn(f64) -> Vec<f64> + Sync,
{
    pub fn new(dimension: usize, f: F) -> Self {
        Self { dimension, f }
    }
}

impl<F> Curve for FnCurve<F>
where
    F: Fn(f64) -> Vec<f64> + Sync,
{
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn point(&self, t: f64) -> Result<Vec<f64>> {
        Ok((self.f)(t))
    }
}

/// `‖u ∧ v‖₂`: `|u₁v₂ − u₂v₁|` in the plane, `‖u × v‖₂` in space.
pub fn wedge_norm(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    match u.len() {
        2 => Ok((u[0] * v[1] - u[1] * v[0]).abs()),
        3 => {
            let c = cross(u, v);
            Ok(norm2(&c))
        }
        n => Err(Error::InvalidArgument(format!(
            "wedge norm is defined for 2D and 3D vectors, got dimension {n}"
        ))),
    }
}

pub(crate) fn cross(u: &[f64], v: &[f64]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm2(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

impl Norm {
    pub fn of(&self, v: impl IntoIterator<Item = f64>) -> f64 {
        let it = v.into_iter();
        match self {
            Norm::L1 => it.map(f64::abs).sum(),
            Norm::L2 => it.map(|x| x * x).sum::<f64>().sqrt(),
            Norm::LInf => it.map(f64::abs).fold(0.0, f64::max),
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        self.of(a.iter().zip(b).map(|(x, y)| x - y))
    }
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "l1" => Ok(Norm::L1),
            "2" | "l2" => Ok(Norm::L2),
            "inf" | "linf" | "max" => Ok(Norm::LInf),
            other => Err(Error::InvalidArgument(format!("unknown norm {other:?}"))),
        }
    }
}

/// A curve sampled at strictly increasing parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    parameters: Vec<f64>,
    points: Vec<Vec<f64>>,
}

impl SampledCurve {
    pub fn new(parameters: Vec<f64>, points: Vec<Vec<f64>>) -> Result<Self> {
        if parameters.len() != points.len() {
            return Err(Error::InvalidArgument(format!(
                "{} parameters but {} points",
                parameters.len(),
                points.len()
            )));
        }
        if parameters.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("parameters must be strictly increasing".into()));
        }
        if let Some(first) = points.first() {
            if let Some(bad) = points.iter().find(|p| p.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    got: bad.len(),
                });
            }
        }
        Ok(Self { parameters, points })
    }

    /// Samples `curve` at `count` uniformly spaced parameters over `[a, b]`.
    pub fn uniform<C: Curve + ?Sized>(curve: &C, a: f64, b: f64, count: usize) -> Result<Self> {
        let parameters = linspace(a, b, count);
        let points = parameters
            .par_iter()
            .map(|&t| curve.point(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parameters, points)
    }

    pub fn parameters(&self) -> &[f64] {
        &self.parameters
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `count` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (count - 1) as f64;
            (0..count)
                .map(|i| if i == count - 1 { b } else { a + i as f64 * h })
                .collect()
        }
    }
}

/// Sum of consecutive distances between samples.
pub fn polyline_length(curve: &SampledCurve, norm: Norm) -> Result<f64> {
    points_length(curve.points(), norm)
}

fn points_length(points: &[Vec<f64>], norm: Norm) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "length needs at least 2 samples, got {}",
            points.len()
        )));
    }
    Ok(points.windows(2).map(|w| norm.distance(&w[0], &w[1])).sum())
}

const INITIAL_SEGMENTS: usize = 64;
const MAX_DOUBLINGS: usize = 18;

/// Doubles the sampling density of `curve` over `[a, b]` until two
/// successive polyline lengths differ by less than `tol`.
pub fn refine_length<C: Curve + ?Sized>(curve: &C, a: f64, b: f64, norm: Norm, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    let mut segments = INITIAL_SEGMENTS;
    let mut points = SampledCurve::uniform(curve, a, b, segments + 1)?.points;
    let mut previous = points_length(&points, norm)?;
    for _ in 0..MAX_DOUBLINGS {
        let h = (b - a) / segments as f64;
        let mids = (0..segments)
            .into_par_iter()
            .map(|i| curve.point(a + (i as f64 + 0.5) * h))
            .collect::<Result<Vec<_>>>()?;
        let mut merged = Vec::with_capacity(2 * segments + 1);
        for (p, m) in points
            .into_iter()
            .zip(mids.into_iter().map(Some).chain(std::iter::once(None)))
        {
            merged.push(p);
            if let Some(m) = m {
                merged.push(m);
            }
        }
        points = merged;
        segments *= 2;
        let current = points_length(&points, norm)?;
        if (current - previous).abs() < tol {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NoConvergence("length refinement", MAX_DOUBLINGS))
}
