//! Adaptive Gauss–Legendre integration over compact intervals.
//!
//! Every integral in this crate is a convolution against a compactly
//! supported kernel, so the integrands are smooth except at a finite set of
//! known parameters (path knots, kinks of analytic sources). Those are passed
//! in as breakpoints; the interval is split there first and the pieces are
//! then refined by bisection with a 15-point rule, comparing each panel
//! against its two halves and always splitting the worst panel next.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 15;

/// Breakpoints closer than this to each other or to an endpoint are merged.
const MERGE_DISTANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute error for the whole interval.
    pub tolerance: f64,
    /// Maximum bisection depth of any panel.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_depth: 40,
        }
    }
}

impl QuadratureSpec {
    pub fn new(tolerance: f64, max_depth: u32) -> Result<Self> {
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must be positive, got {tolerance}"
            )));
        }
        if max_depth < 1 {
            return Err(Error::InvalidArgument("max_depth must be at least 1".into()));
        }
        Ok(Self { tolerance, max_depth })
    }

    pub fn with_tolerance(self, tolerance: f64) -> Result<Self> {
        Self::new(tolerance, self.max_depth)
    }
}

struct Rule {
    nodes: [f64; ORDER],
    weights: [f64; ORDER],
}

/// Legendre P_n and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut nodes = [0.0; ORDER];
        let mut weights = [0.0; ORDER];
        let n = ORDER as f64;
        for i in 0..ORDER {
            // Tricomi initial guess, then Newton.
            let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(ORDER, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(ORDER, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        // Odd order: the middle node is exactly zero.
        nodes[ORDER / 2] = 0.0;
        Rule { nodes, weights }
    })
}

/// Rule applied to `f` and to `|f|` on one panel.
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let r = rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let (mut sum, mut abs) = (0.0, 0.0);
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        let v = w * f(mid + half * x);
        sum += v;
        abs += v.abs();
    }
    (sum * half, abs * half.abs())
}

/// Relative size of the error estimate that is indistinguishable from roundoff.
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

/// Sorted, deduplicated breakpoints strictly inside `(a, b)`, with `a` and `b` at the ends.
fn split_points(a: f64, b: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x.is_finite() && x > a + MERGE_DISTANCE && x < b - MERGE_DISTANCE)
        .collect();
    inner.sort_by(|x, y| x.total_cmp(y));
    let mut out = Vec::with_capacity(inner.len() + 2);
    out.push(a);
    for x in inner {
        if x - out[out.len() - 1] > MERGE_DISTANCE {
            out.push(x);
        }
    }
    out.push(b);
    out
}

/// A bisectable panel: its two-half estimate and the error of that estimate.
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
    depth: u32,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, depth: u32) -> Self {
        let mid = 0.5 * (a + b);
        let (left, left_abs) = panel(f, a, mid);
        let (right, right_abs) = panel(f, mid, b);
        let raw = (left + right - whole).abs();
        // Differences at the level of the rule's own rounding are not error.
        let error = if raw <= ROUNDOFF * (left_abs + right_abs) {
            0.0
        } else {
            raw
        };
        Self {
            a,
            b,
            left,
            right,
            error,
            depth,
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }

    fn splittable(&self, max_depth: u32) -> bool {
        let mid = 0.5 * (self.a + self.b);
        self.depth < max_depth && mid > self.a && mid < self.b
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Upper limit on bisections per integral.
const MAX_SUBDIVISIONS: usize = 20_000;

/// Integrates `f` over `[a, b]`, splitting first at every breakpoint inside the interval.
///
/// Panels are bisected worst-first until the summed error estimate is within
/// `spec.tolerance`. Panels that reach `spec.max_depth` are kept as they are;
/// their error still counts against the tolerance.
pub fn integrate<F>(f: F, a: f64, b: f64, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a <= b) {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if b - a <= MERGE_DISTANCE {
        return Ok(0.0);
    }
    let mut active = BinaryHeap::new();
    let mut settled = Vec::new();
    let mut total_error = 0.0;
    for w in split_points(a, b, breakpoints).windows(2) {
        let (whole, _) = panel(&f, w[0], w[1]);
        let p = Panel::new(&f, w[0], w[1], whole, 1);
        total_error += p.error;
        active.push(p);
    }
    let mut subdivisions = 0;
    while total_error > spec.tolerance && subdivisions < MAX_SUBDIVISIONS {
        let Some(worst) = active.pop() else { break };
        if worst.error == 0.0 {
            active.push(worst);
            break;
        }
        if !worst.splittable(spec.max_depth) {
            settled.push(worst);
            continue;
        }
        subdivisions += 1;
        let mid = 0.5 * (worst.a + worst.b);
        let l = Panel::new(&f, worst.a, mid, worst.left, worst.depth + 1);
        let r = Panel::new(&f, mid, worst.b, worst.right, worst.depth + 1);
        total_error += l.error + r.error - worst.error;
        active.push(l);
        active.push(r);
    }
    // Recompute from the parts so cancellation in the running sum cannot mask divergence.
    let mut panels: Vec<Panel> = settled.into_iter().chain(active).collect();
    let total_error: f64 = panels.iter().map(|p| p.error).sum();
    if total_error > spec.tolerance {
        let worst = panels.iter().max().expect("at least one panel");
        return Err(Error::QuadratureDiverged {
            a: worst.a,
            b: worst.b,
            estimate: total_error,
            tolerance: spec.tolerance,
        });
    }
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(panels.iter().map(Panel::value).sum())
}
