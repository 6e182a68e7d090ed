//! Smoothing of non-differentiable parametric paths by convolution with a
//! compactly supported bump kernel.
//!
//! The crate is organised bottom-up:
//!
//! * [`kernel`]: the bump mollifier, its scaled family, derivatives and CDF.
//! * [`quadrature`]: adaptive Gauss–Legendre integration with breakpoints.
//! * [`paths`]: waypoint polylines, analytic paths, extensions to the real
//!   line and the demonstration paths.
//! * [`smoothing`]: the mollified path and its exact derivatives.
//! * [`geometry`]: wedge norms, lengths and convex-hull containment.
//! * [`curvature`]: corner curvature, its closed-form bound and ε planning.
//! * [`verify`]: grid checks of convexity, monotonicity, enclosure, length.
//! * [`cli`]: the command implementations behind the `mollify` binary.
//!
//! ```
//! use mollify::paths::{ExtendedPath, WaypointPath};
//! use mollify::smoothing::MollifiedPath;
//!
//! let corner = WaypointPath::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]], false)?;
//! let smooth = MollifiedPath::uniform(ExtendedPath::natural(corner)?, 0.25)?;
//! let kappa = smooth.curvature(1.0)?;
//! assert!(kappa.is_finite() && kappa > 0.0);
//! # Ok::<(), mollify::Error>(())
//! ```

// `!(x > 0.0)` is the NaN-rejecting form used for argument validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curvature;
mod error;
pub mod geometry;
pub mod kernel;
pub mod paths;
#[cfg(test)]
mod properties;
pub mod quadrature;
pub mod smoothing;
pub mod verify;

pub use error::{Error, Result};
