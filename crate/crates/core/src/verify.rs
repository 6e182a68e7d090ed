//! Grid-based checks of the qualitative guarantees of mollification.
//!
//! Each check mollifies its input, samples on an explicit grid and reports
//! the most adverse margin it saw. A property violation is data
//! (`passed == false`); errors are reserved for failures of the numerical
//! machinery itself.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{linspace, refine_length, ConvexHull, Curve, Norm, SampledCurve};
use crate::paths::{ExtendedPath, Extension, ParametricPath, PathSource};
use crate::smoothing::MollifiedPath;

/// Slack for sign tests on differences of mollified values.
pub const GRID_TOLERANCE: f64 = 1e-9;
/// Slack for the `K·ε` uniform error bound.
pub const LIPSCHITZ_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Most adverse margin observed; negative means the property was violated.
    pub worst_violation: f64,
    pub samples: usize,
    pub tolerance: f64,
    #[serde(default)]
    pub skipped: bool,
    #[serde(default)]
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, worst_violation: f64, samples: usize, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: worst_violation >= -tolerance,
            worst_violation,
            samples,
            tolerance,
            skipped: false,
            detail: String::new(),
        }
    }

    pub fn skipped(name: impl Into<String>, samples: usize, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            worst_violation: 0.0,
            samples,
            tolerance: 0.0,
            skipped: true,
            detail: detail.into(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Serializes a batch of reports as a JSON array.
pub fn reports_to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn reports_from_json(text: &str) -> Result<Vec<CheckReport>> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("check reports: {e}")))
}

/// `count` evenly spaced points over `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, count: usize) -> Self {
        Self { start, end, count }
    }

    /// `count` points strictly inside `(start, end)`.
    pub fn interior(start: f64, end: f64, count: usize) -> Self {
        let h = (end - start) / (count + 1) as f64;
        Self::new(start + h, end - h, count)
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.end, self.count)
    }

    fn describe(&self) -> String {
        format!("grid [{}, {}] x {}", self.start, self.end, self.count)
    }
}

fn mollify_scalar(f: &ParametricPath, eps: f64) -> Result<MollifiedPath> {
    if f.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dimension(),
        });
    }
    MollifiedPath::uniform(ExtendedPath::new(f.clone(), Extension::Clamp)?, eps)
}

fn mollified_values(f: &ParametricPath, eps: f64, ts: &[f64]) -> Result<Vec<f64>> {
    let m = mollify_scalar(f, eps)?;
    Ok(m.sample(ts)?.into_iter().map(|p| p[0]).collect())
}

fn min_second_difference(values: &[f64]) -> f64 {
    values
        .windows(3)
        .map(|w| w[0] - 2.0 * w[1] + w[2])
        .fold(f64::INFINITY, f64::min)
}

/// Second differences of `f ∗ φ_ε` on the grid are nonnegative.
pub fn check_convexity_preservation(f: &ParametricPath, eps: f64, grid: Grid) -> Result<CheckReport> {
    let values = mollified_values(f, eps, &grid.points())?;
    Ok(
        CheckReport::new("convexity", min_second_difference(&values), grid.count, GRID_TOLERANCE)
            .with_detail(format!("eps {eps}, {}", grid.describe())),
    )
}

/// One convexity report per scale on `count` interior points of `window`.
pub fn check_local_convexity_window(
    f: &ParametricPath,
    window: (f64, f64),
    eps_list: &[f64],
    count: usize,
) -> Result<Vec<CheckReport>> {
    let grid = Grid::interior(window.0, window.1, count);
    let ts = grid.points();
    eps_list
        .iter()
        .map(|&eps| {
            let values = mollified_values(f, eps, &ts)?;
            Ok(CheckReport::new(
                format!("local-convexity eps={eps}"),
                min_second_difference(&values),
                count,
                GRID_TOLERANCE,
            )
            .with_detail(format!("window ({}, {})", window.0, window.1)))
        })
        .collect()
}

/// `f ∗ φ_ε ≥ f` on the grid.
pub fn check_dominance(f: &ParametricPath, eps: f64, grid: Grid) -> Result<CheckReport> {
    let ts = grid.points();
    let values = mollified_values(f, eps, &ts)?;
    let worst = ts
        .iter()
        .zip(&values)
        .map(|(&t, &v)| v - f.eval_component(0, t))
        .fold(f64::INFINITY, f64::min);
    Ok(CheckReport::new("dominance", worst, grid.count, GRID_TOLERANCE)
        .with_detail(format!("eps {eps}, {}", grid.describe())))
}

/// `f ∗ φ_ε < f` at every grid point; the margin is the smallest gap.
pub fn check_strictly_below(f: &ParametricPath, eps: f64, grid: Grid) -> Result<CheckReport> {
    let ts = grid.points();
    let values = mollified_values(f, eps, &ts)?;
    let gap = ts
        .iter()
        .zip(&values)
        .map(|(&t, &v)| f.eval_component(0, t) - v)
        .fold(f64::INFINITY, f64::min);
    let mut report = CheckReport::new("strictly-below-source", gap, grid.count, 0.0);
    report.passed = gap > 0.0;
    Ok(report.with_detail(format!("eps {eps}, {}", grid.describe())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Consecutive mollified values move in the stated direction.
pub fn check_monotonicity(f: &ParametricPath, eps: f64, grid: Grid, direction: Monotone) -> Result<CheckReport> {
    let values = mollified_values(f, eps, &grid.points())?;
    let sign = match direction {
        Monotone::Increasing => 1.0,
        Monotone::Decreasing => -1.0,
    };
    let worst = values
        .windows(2)
        .map(|w| sign * (w[1] - w[0]))
        .fold(f64::INFINITY, f64::min);
    Ok(CheckReport::new("monotonicity", worst, grid.count, GRID_TOLERANCE)
        .with_detail(format!("{direction:?}, eps {eps}, {}", grid.describe())))
}

/// Largest amount by which a sample exceeds the lower of the minima on its
/// two sides, negated. Zero or positive iff every sublevel set of the
/// samples is a contiguous run of indices.
pub fn sublevel_contiguity_margin(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 3 {
        return 0.0;
    }
    let mut suffix_min = vec![f64::INFINITY; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(values[i]);
    }
    let mut prefix_min = f64::INFINITY;
    let mut worst = 0.0f64;
    for j in 0..n {
        if j > 0 && j + 1 < n {
            let excess = values[j] - prefix_min.max(suffix_min[j + 1]);
            worst = worst.max(excess);
        }
        prefix_min = prefix_min.min(values[j]);
    }
    -worst
}

/// Every sampled sublevel set of `f ∗ φ_ε` is an interval of grid indices.
pub fn check_quasiconvexity(f: &ParametricPath, eps: f64, grid: Grid) -> Result<CheckReport> {
    let values = mollified_values(f, eps, &grid.points())?;
    Ok(CheckReport::new(
        "quasiconvexity",
        sublevel_contiguity_margin(&values),
        grid.count,
        GRID_TOLERANCE,
    )
    .with_detail(format!("eps {eps}, {}", grid.describe())))
}

/// Mollified samples over `domain` lie in the hull of `sample_count` source
/// samples (plus the waypoints, for polylines).
pub fn check_hull_enclosure(
    source: &ExtendedPath,
    mollified: &MollifiedPath,
    domain: (f64, f64),
    sample_count: usize,
    slack: f64,
) -> Result<CheckReport> {
    let mut cloud = SampledCurve::uniform(source, domain.0, domain.1, sample_count)?
        .points()
        .to_vec();
    if let PathSource::Waypoints(w) = source.source() {
        cloud.extend(w.points().iter().cloned());
    }
    let hull = ConvexHull::new(&cloud)?;
    let samples = SampledCurve::uniform(mollified, domain.0, domain.1, sample_count)?;
    let mut worst = f64::INFINITY;
    let mut outside = 0usize;
    for p in samples.points() {
        let d = hull.distance(p)?;
        worst = worst.min(-d);
        if d > slack {
            outside += 1;
        }
    }
    Ok(CheckReport::new("hull-enclosure", worst, sample_count, slack)
        .with_detail(format!("{outside} of {sample_count} samples outside the hull")))
}

/// `L(F) ≤ L(f) + tol` with both lengths refined to `tol`.
pub fn check_length_non_increase<S, M>(
    source: &S,
    mollified: &M,
    domain: (f64, f64),
    norm: Norm,
    tol: f64,
) -> Result<CheckReport>
where
    S: Curve + ?Sized,
    M: Curve + ?Sized,
{
    let ls = refine_length(source, domain.0, domain.1, norm, tol)?;
    let lm = refine_length(mollified, domain.0, domain.1, norm, tol)?;
    Ok(CheckReport::new("length-non-increase", ls - lm, 0, tol)
        .with_detail(format!("{norm:?} source {ls:.6}, mollified {lm:.6}")))
}

/// `sup |F_ε − f| ≤ K·ε` along a sequence of scales, with errors shrinking
/// as the scale does. Skipped when `f` is visibly not `K`-Lipschitz on the grid.
pub fn check_uniform_convergence(
    f: &ParametricPath,
    lipschitz: f64,
    eps_sequence: &[f64],
    grid: Grid,
) -> Result<CheckReport> {
    let ts = grid.points();
    let source: Vec<f64> = ts.iter().map(|&t| f.eval_component(0, t)).collect();
    let steepest = ts
        .windows(2)
        .zip(source.windows(2))
        .map(|(t, v)| (v[1] - v[0]).abs() / (t[1] - t[0]))
        .fold(0.0, f64::max);
    if steepest > lipschitz * (1.0 + 1e-9) + 1e-12 {
        return Ok(CheckReport::skipped(
            "uniform-convergence",
            grid.count,
            format!("source is not {lipschitz}-Lipschitz on the grid (slope {steepest:.3e})"),
        ));
    }
    let mut worst = f64::INFINITY;
    let mut errors = Vec::with_capacity(eps_sequence.len());
    for &eps in eps_sequence {
        let values = mollified_values(f, eps, &ts)?;
        let sup = values
            .iter()
            .zip(&source)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.min(lipschitz * eps - sup);
        errors.push((eps, sup));
    }
    for w in errors.windows(2) {
        if w[1].0 < w[0].0 {
            worst = worst.min(w[0].1 - w[1].1);
        }
    }
    let detail = errors
        .iter()
        .map(|(e, s)| format!("eps {e}: sup err {s:.3e}"))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(CheckReport::new("uniform-convergence", worst, grid.count, LIPSCHITZ_TOLERANCE).with_detail(detail))
}
