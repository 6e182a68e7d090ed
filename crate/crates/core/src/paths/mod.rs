//! Path representations and their total extensions to the real line.
//!
//! A [`WaypointPath`] is a polyline with knot `i` at parameter `t = i`. A
//! [`ParametricPath`] wraps analytic component functions. Either becomes an
//! [`ExtendedPath`] once an [`Extension`] policy makes it defined for every
//! real `t`, which is what the mollifier needs.

mod demo;
mod document;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use demo::{cube_path, heart_path, local_convexity_counterexample, staircase_path, CUBE_TOUR};
pub use document::{parse_waypoints, WaypointDocument};

/// A scalar component `t ↦ f(t)`.
pub type Component = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval { start: f64, end: f64 },
    EntireLine,
}

impl Domain {
    pub fn interval(start: f64, end: f64) -> Result<Self> {
        if !(start < end) || !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidPath(format!(
                "domain must be a finite interval with start < end, got [{start}, {end}]"
            )));
        }
        Ok(Domain::Interval { start, end })
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            Domain::Interval { start, end } => Some((start, end)),
            Domain::EntireLine => None,
        }
    }
}

/// A path given by one analytic function per coordinate.
#[derive(Clone)]
pub struct ParametricPath {
    components: Vec<Component>,
    domain: Domain,
    kinks: Vec<f64>,
}

impl fmt::Debug for ParametricPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricPath")
            .field("dimension", &self.components.len())
            .field("domain", &self.domain)
            .field("kinks", &self.kinks)
            .finish()
    }
}

impl ParametricPath {
    pub fn new(components: Vec<Component>, domain: Domain) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidPath("a path needs at least one component".into()));
        }
        Ok(Self {
            components,
            domain,
            kinks: Vec::new(),
        })
    }

    /// A one-dimensional path, i.e. a real function.
    pub fn scalar<F>(f: F, domain: Domain) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            components: vec![Arc::new(f)],
            domain,
            kinks: Vec::new(),
        }
    }

    /// Declares parameters where some component fails to be smooth. The
    /// mollifier splits its quadrature there.
    pub fn with_kinks(mut self, kinks: impl IntoIterator<Item = f64>) -> Self {
        self.kinks = kinks.into_iter().filter(|k| k.is_finite()).collect();
        self.kinks.sort_by(f64::total_cmp);
        self.kinks.dedup();
        self
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn eval_component(&self, i: usize, t: f64) -> f64 {
        (self.components[i])(t)
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.components.iter().map(|c| c(t)).collect()
    }
}

/// An ordered list of waypoints joined by unit-parameter segments.
#[derive(Debug, Clone, PartialEq)]
pub struct WaypointPath {
    points: Vec<Vec<f64>>,
    closed: bool,
}

impl WaypointPath {
    pub fn new(points: Vec<Vec<f64>>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPath(format!(
                "a waypoint path needs at least 2 points, got {}",
                points.len()
            )));
        }
        let dim = points[0].len();
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidPath(format!(
                "waypoints must be 2- or 3-dimensional, got {dim}"
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPath(format!("waypoint {i} has a non-finite coordinate")));
            }
        }
        let n = points.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            let j = (i + 1) % n;
            if points[i] == points[j] {
                return Err(Error::InvalidPath(format!(
                    "waypoints {i} and {j} coincide (zero-length segment)"
                )));
            }
        }
        Ok(Self { points, closed })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }

    /// Number of segments, including the closing one for loops.
    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    /// Parameter interval `[0, end]` covering every segment once.
    pub fn parameter_end(&self) -> f64 {
        self.segment_count() as f64
    }

    /// `P_{i+1} - P_i` for segment `i` (0-based); the closing segment wraps.
    pub fn segment_vector(&self, i: usize) -> Vec<f64> {
        let n = self.points.len();
        let a = &self.points[i % n];
        let b = &self.points[(i + 1) % n];
        b.iter().zip(a).map(|(b, a)| b - a).collect()
    }

    fn endpoint_index(&self, seg: usize) -> usize {
        (seg + 1) % self.points.len()
    }

    /// Component `i` for `t` in `[0, parameter_end]`; values outside are clamped.
    pub fn eval_component(&self, i: usize, t: f64) -> f64 {
        let end = self.parameter_end();
        if !(t > 0.0) {
            return self.points[0][i];
        }
        if t >= end {
            return self.points[self.endpoint_index(self.segment_count() - 1)][i];
        }
        let seg = (t.floor() as usize).min(self.segment_count() - 1);
        let s = t - seg as f64;
        let a = self.points[seg][i];
        let b = self.points[self.endpoint_index(seg)][i];
        if s == 0.0 {
            a
        } else {
            (1.0 - s) * a + s * b
        }
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        (0..self.dimension()).map(|i| self.eval_component(i, t)).collect()
    }

    /// Polyline length in the Euclidean norm.
    pub fn length(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| self.segment_vector(i).iter().map(|c| c * c).sum::<f64>().sqrt())
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// Hold the endpoint values outside the native domain.
    Clamp,
    /// Repeat the path with the length of its domain as the period.
    Periodic,
}

#[derive(Debug, Clone)]
pub enum PathSource {
    Waypoints(WaypointPath),
    Parametric(ParametricPath),
}

impl From<WaypointPath> for PathSource {
    fn from(p: WaypointPath) -> Self {
        PathSource::Waypoints(p)
    }
}

impl From<ParametricPath> for PathSource {
    fn from(p: ParametricPath) -> Self {
        PathSource::Parametric(p)
    }
}

/// Tolerance on `f(a) = f(b)` when a parametric path is made periodic.
const PERIODIC_SEAM_TOLERANCE: f64 = 1e-9;

/// A path made total on the real line.
#[derive(Debug, Clone)]
pub struct ExtendedPath {
    source: PathSource,
    policy: Extension,
}

impl ExtendedPath {
    pub fn new(source: impl Into<PathSource>, policy: Extension) -> Result<Self> {
        let source = source.into();
        if policy == Extension::Periodic {
            match &source {
                PathSource::Waypoints(w) if !w.is_closed() => {
                    return Err(Error::InvalidPath(
                        "periodic extension requires a closed waypoint path".into(),
                    ))
                }
                PathSource::Waypoints(_) => {}
                PathSource::Parametric(p) => {
                    let (a, b) = p
                        .domain()
                        .bounds()
                        .ok_or_else(|| Error::InvalidPath("periodic extension requires a compact domain".into()))?;
                    let (fa, fb) = (p.eval(a), p.eval(b));
                    let gap = fa.iter().zip(&fb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                    if !(gap <= PERIODIC_SEAM_TOLERANCE) {
                        return Err(Error::InvalidPath(format!(
                            "periodic extension requires f(a) = f(b); endpoints differ by {gap:e}"
                        )));
                    }
                }
            }
        }
        Ok(Self { source, policy })
    }

    /// Periodic for closed paths (closed polylines, and compact parametric
    /// paths whose endpoints coincide), clamped otherwise.
    pub fn natural(source: impl Into<PathSource>) -> Result<Self> {
        let source = source.into();
        let closed = match &source {
            PathSource::Waypoints(w) => w.is_closed(),
            PathSource::Parametric(p) => p.domain().bounds().is_some_and(|(a, b)| {
                p.eval(a)
                    .iter()
                    .zip(&p.eval(b))
                    .all(|(x, y)| (x - y).abs() <= PERIODIC_SEAM_TOLERANCE)
            }),
        };
        let policy = if closed { Extension::Periodic } else { Extension::Clamp };
        Self::new(source, policy)
    }

    pub fn source(&self) -> &PathSource {
        &self.source
    }

    pub fn policy(&self) -> Extension {
        self.policy
    }

    pub fn dimension(&self) -> usize {
        match &self.source {
            PathSource::Waypoints(w) => w.dimension(),
            PathSource::Parametric(p) => p.dimension(),
        }
    }

    /// The native parameter domain, `None` for paths defined on the whole line.
    pub fn native_domain(&self) -> Option<(f64, f64)> {
        match &self.source {
            PathSource::Waypoints(w) => Some((0.0, w.parameter_end())),
            PathSource::Parametric(p) => p.domain().bounds(),
        }
    }

    /// Period of the extension, if periodic.
    pub fn period(&self) -> Option<f64> {
        match self.policy {
            Extension::Periodic => self.native_domain().map(|(a, b)| b - a),
            Extension::Clamp => None,
        }
    }

    fn reduce(&self, t: f64) -> f64 {
        match (self.policy, self.native_domain()) {
            (_, None) => t,
            (Extension::Clamp, Some((a, b))) => t.clamp(a, b),
            (Extension::Periodic, Some((a, b))) => {
                if (a..b).contains(&t) {
                    t
                } else {
                    a + (t - a).rem_euclid(b - a)
                }
            }
        }
    }

    pub fn eval_component(&self, i: usize, t: f64) -> f64 {
        let t = self.reduce(t);
        match &self.source {
            PathSource::Waypoints(w) => w.eval_component(i, t),
            PathSource::Parametric(p) => p.eval_component(i, t),
        }
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        (0..self.dimension()).map(|i| self.eval_component(i, t)).collect()
    }

    /// Appends every parameter in `[lo, hi]` where the extended path may fail
    /// to be smooth: polyline knots, declared kinks and extension seams.
    pub fn breakpoints_in(&self, lo: f64, hi: f64, out: &mut Vec<f64>) {
        let within = |k: &f64| (lo..=hi).contains(k);
        let integers = |from: f64, to: f64| (from.ceil() as i64..=to.floor() as i64).map(|k| k as f64);
        match (&self.source, self.policy, self.native_domain()) {
            (PathSource::Waypoints(_), Extension::Periodic, _) => out.extend(integers(lo, hi)),
            (PathSource::Waypoints(w), Extension::Clamp, _) => {
                out.extend(integers(lo.max(0.0), hi.min(w.parameter_end())))
            }
            (PathSource::Parametric(p), _, None) => out.extend(p.kinks().iter().copied().filter(within)),
            (PathSource::Parametric(p), Extension::Clamp, Some((a, b))) => {
                out.extend(p.kinks().iter().copied().chain([a, b]).filter(within))
            }
            (PathSource::Parametric(p), Extension::Periodic, Some((a, b))) => {
                let period = b - a;
                let first = ((lo - b) / period).floor() as i64;
                let last = ((hi - a) / period).ceil() as i64;
                for shift in first..=last {
                    let offset = shift as f64 * period;
                    out.extend(
                        p.kinks()
                            .iter()
                            .map(|k| k + offset)
                            .chain(std::iter::once(a + offset))
                            .filter(within),
                    );
                }
            }
        }
    }
}
