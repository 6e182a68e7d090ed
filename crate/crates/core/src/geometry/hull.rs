//! Convex-hull containment with a distance slack.
//!
//! In the plane the hull is built once with Andrew's monotone chain and
//! queried by signed distance. In space no hull is built: a query is inside
//! if it is (within slack) a convex combination of the cloud, which is
//! decided by Gilbert's distance algorithm on the point cloud.

use crate::error::{Error, Result};

use super::dot;

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull vertices without collinear points.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let d = [ap[0] - s * ab[0], ap[1] - s * ab[1]];
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

/// A point cloud prepared for repeated containment queries.
#[derive(Debug, Clone)]
pub enum ConvexHull {
    /// Counter-clockwise hull vertices.
    Planar(Vec<[f64; 2]>),
    /// The raw cloud.
    Spatial(Vec<[f64; 3]>),
}

impl ConvexHull {
    pub fn new(cloud: &[Vec<f64>]) -> Result<Self> {
        let first = cloud
            .first()
            .ok_or_else(|| Error::InvalidArgument("convex hull of an empty cloud".into()))?;
        let dim = first.len();
        if let Some(bad) = cloud.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        match dim {
            2 => {
                let pts: Vec<[f64; 2]> = cloud.iter().map(|p| [p[0], p[1]]).collect();
                Ok(ConvexHull::Planar(convex_hull_2d(&pts)))
            }
            3 => {
                let pts: Vec<[f64; 3]> = cloud.iter().map(|p| [p[0], p[1], p[2]]).collect();
                Ok(ConvexHull::Spatial(prune_interior(pts)))
            }
            n => Err(Error::InvalidArgument(format!(
                "hull containment supports 2D and 3D points, got dimension {n}"
            ))),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            ConvexHull::Planar(_) => 2,
            ConvexHull::Spatial(_) => 3,
        }
    }

    /// Euclidean distance from `query` to the hull. With a `slack`, the search
    /// may stop early at any bound that already decides `distance <= slack`.
    fn distance_within(&self, query: &[f64], slack: Option<f64>) -> f64 {
        match self {
            ConvexHull::Planar(h) => planar_distance(h, [query[0], query[1]]),
            ConvexHull::Spatial(cloud) => gilbert_distance(cloud, [query[0], query[1], query[2]], slack),
        }
    }

    /// Whether `query` lies within Euclidean distance `slack` of the hull.
    pub fn contains(&self, query: &[f64], slack: f64) -> Result<bool> {
        if query.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: query.len(),
            });
        }
        Ok(self.distance_within(query, Some(slack)) <= slack)
    }

    /// Distance from `query` to the hull; zero inside.
    pub fn distance(&self, query: &[f64]) -> Result<f64> {
        if query.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: query.len(),
            });
        }
        Ok(self.distance_within(query, None))
    }
}

fn planar_distance(hull: &[[f64; 2]], q: [f64; 2]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => ((q[0] - hull[0][0]).powi(2) + (q[1] - hull[0][1]).powi(2)).sqrt(),
        2 => segment_distance(q, hull[0], hull[1]),
        n => {
            let inside = (0..n).all(|i| cross2(hull[i], hull[(i + 1) % n], q) >= 0.0);
            if inside {
                0.0
            } else {
                (0..n)
                    .map(|i| segment_distance(q, hull[i], hull[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Closest point to the origin on the convex hull of up to four points,
/// found by trying the affine projection onto every face of the simplex.
/// Returns the point and the vertices carrying positive weight.
fn closest_on_simplex(simplex: &[[f64; 3]]) -> ([f64; 3], Vec<[f64; 3]>) {
    let k = simplex.len();
    let mut best: Option<(f64, [f64; 3], Vec<[f64; 3]>)> = None;
    for mask in 1u32..(1 << k) {
        let verts: Vec<[f64; 3]> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| simplex[i]).collect();
        let Some(weights) = affine_projection_weights(&verts) else {
            continue;
        };
        if weights.iter().any(|&w| w < -1e-12) {
            continue;
        }
        let mut x = [0.0; 3];
        for (w, v) in weights.iter().zip(&verts) {
            for c in 0..3 {
                x[c] += w * v[c];
            }
        }
        let d = dot(&x, &x);
        if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
            let support = verts
                .iter()
                .zip(&weights)
                .filter(|(_, &w)| w > 1e-12)
                .map(|(v, _)| *v)
                .collect::<Vec<_>>();
            let support = if support.is_empty() { verts.clone() } else { support };
            best = Some((d, x, support));
        }
    }
    let (_, x, support) = best.expect("single vertices always project");
    (x, support)
}

/// Barycentric weights of the origin's projection onto the affine hull of `verts`.
fn affine_projection_weights(verts: &[[f64; 3]]) -> Option<Vec<f64>> {
    let p0 = verts[0];
    let m = verts.len() - 1;
    if m == 0 {
        return Some(vec![1.0]);
    }
    let edges: Vec<[f64; 3]> = verts[1..].iter().map(|v| sub3(*v, p0)).collect();
    // Normal equations G μ = -Eᵀ p0.
    let mut g = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for i in 0..m {
        for j in 0..m {
            g[i][j] = dot(&edges[i], &edges[j]);
        }
        rhs[i] = -dot(&edges[i], &p0);
    }
    let mu = solve_small(&mut g, &mut rhs, m)?;
    let mut w = Vec::with_capacity(m + 1);
    w.push(1.0 - mu[..m].iter().sum::<f64>());
    w.extend_from_slice(&mu[..m]);
    Some(w)
}

/// Gaussian elimination with partial pivoting on an `m × m` system, `m ≤ 3`.
fn solve_small(a: &mut [[f64; 3]; 3], b: &mut [f64; 3], m: usize) -> Option<[f64; 3]> {
    let scale = (0..m).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (x, p) in a[row][col..m].iter_mut().zip(&pivot_row[col..m]) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..m).rev() {
        let s: f64 = (row + 1..m).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

const GILBERT_MAX_ITERATIONS: usize = 256;

/// Distance from `q` to the convex hull of `cloud`, stopping early once it is
/// certainly above or below `slack`.
fn gilbert_distance(cloud: &[[f64; 3]], q: [f64; 3], slack: Option<f64>) -> f64 {
    let shifted = |p: &[f64; 3]| sub3(*p, q);
    let mut simplex = vec![shifted(&cloud[0])];
    let mut x = simplex[0];
    let mut best = dot(&x, &x).sqrt();
    for _ in 0..GILBERT_MAX_ITERATIONS {
        let dist = dot(&x, &x).sqrt();
        best = best.min(dist);
        if dist <= slack.unwrap_or(0.0) || dist == 0.0 {
            return dist;
        }
        // Support point of the shifted cloud in direction -x.
        let support = cloud
            .iter()
            .map(shifted)
            .min_by(|a, b| dot(a, &x).total_cmp(&dot(b, &x)))
            .expect("non-empty cloud");
        let lower = dot(&support, &x) / dist;
        if slack.is_some_and(|s| lower > s) {
            return lower;
        }
        // Converged: no point improves on x.
        if dist * dist - dot(&support, &x) <= 1e-14 * dist * dist.max(1.0) {
            return dist;
        }
        // A full tetrahedron only survives reduction when the origin is inside up to rounding.
        if simplex.contains(&support) || simplex.len() == 4 {
            return dist;
        }
        simplex.push(support);
        let (nx, reduced) = closest_on_simplex(&simplex);
        x = nx;
        simplex = reduced;
    }
    best
}

const PRUNE_DIRECTIONS: usize = 512;

/// Drops points strictly inside the hull of the cloud's extreme points in a
/// spread of directions. The hull itself is unchanged.
fn prune_interior(cloud: Vec<[f64; 3]>) -> Vec<[f64; 3]> {
    if cloud.len() <= 4 * PRUNE_DIRECTIONS {
        return cloud;
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut extreme: Vec<usize> = (0..PRUNE_DIRECTIONS)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / PRUNE_DIRECTIONS as f64;
            let r = (1.0 - z * z).sqrt();
            let a = golden * i as f64;
            let d = [r * a.cos(), r * a.sin(), z];
            (0..cloud.len())
                .max_by(|&i, &j| dot(&cloud[i], &d).total_cmp(&dot(&cloud[j], &d)))
                .expect("non-empty cloud")
        })
        .collect();
    extreme.sort_unstable();
    extreme.dedup();
    let core: Vec<[f64; 3]> = extreme.iter().map(|&i| cloud[i]).collect();
    let extent = cloud
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, c| m.max(c.abs()))
        .max(1.0);
    let mut kept = core.clone();
    for (i, p) in cloud.iter().enumerate() {
        if extreme.binary_search(&i).is_err() && gilbert_distance(&core, *p, Some(0.0)) > 1e-12 * extent {
            kept.push(*p);
        }
    }
    kept
}

/// Whether `query` lies within Euclidean distance `slack` of the convex hull of `cloud`.
pub fn convex_hull_contains(cloud: &[Vec<f64>], query: &[f64], slack: f64) -> Result<bool> {
    ConvexHull::new(cloud)?.contains(query, slack)
}
