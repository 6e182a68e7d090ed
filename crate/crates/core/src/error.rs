use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("quadrature did not converge on [{a}, {b}]: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureDiverged {
        a: f64,
        b: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("corner at parameter {knot} is not isolated: knot {neighbor} lies within {eps} of t = {t}")]
    CornerNotIsolated { knot: f64, neighbor: f64, eps: f64, t: f64 },

    #[error("{0} did not converge after {1} iterations")]
    NoConvergence(&'static str, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("malformed input: {0}")]
    Input(String),
}

impl Error {
    /// Whether the failure came from numerical machinery rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::QuadratureDiverged { .. } | Error::NoConvergence(..))
    }
}
