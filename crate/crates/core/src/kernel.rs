//! The C∞ bump mollifier `φ(x) = c·exp(-1/(1-x²))` on `(-1, 1)` and its
//! rescaled family `φ_ε(x) = φ(x/ε)/ε`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};

/// Points with `|x| > 1 - SUPPORT_GUARD` are treated as outside the support.
const SUPPORT_GUARD: f64 = 1e-12;

fn unnormalized(x: f64) -> f64 {
    let ax = x.abs();
    if ax >= 1.0 - SUPPORT_GUARD {
        return 0.0;
    }
    (-1.0 / (1.0 - x * x)).exp()
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "kernel scale must be positive and finite, got {eps}"
        )))
    }
}

/// The normalized bump kernel. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpKernel {
    normalization: f64,
    sup_norm: f64,
}

impl BumpKernel {
    /// Builds the kernel, computing the normalization constant by quadrature.
    pub fn new() -> Result<Self> {
        let spec = QuadratureSpec::new(1e-12, 50)?;
        let mass = integrate(unnormalized, -1.0, 1.0, &[0.0], &spec)?;
        let normalization = 1.0 / mass;
        Ok(Self {
            normalization,
            sup_norm: normalization * (-1.0f64).exp(),
        })
    }

    /// Shared instance used throughout the crate.
    pub fn standard() -> &'static BumpKernel {
        static KERNEL: OnceLock<BumpKernel> = OnceLock::new();
        KERNEL.get_or_init(|| BumpKernel::new().expect("bump kernel normalization"))
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// `‖φ‖∞`, attained at the origin.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.normalization * unnormalized(x)
    }

    /// `φ'(u)` and `φ''(u)` of the unit kernel.
    fn unit_derivative(&self, u: f64, order: u8) -> f64 {
        if u.abs() >= 1.0 - SUPPORT_GUARD {
            return 0.0;
        }
        let w = 1.0 - u * u;
        let phi = self.eval(u);
        match order {
            1 => phi * (-2.0 * u / (w * w)),
            _ => phi * (6.0 * u.powi(4) - 2.0) / (w * w * w * w),
        }
    }

    pub fn eval_scaled(&self, x: f64, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        Ok(self.eval(x / eps) / eps)
    }

    /// Derivative of order 1 or 2 of `φ_ε` at `x`.
    pub fn derivative(&self, x: f64, eps: f64, order: u8) -> Result<f64> {
        check_eps(eps)?;
        match order {
            1 => Ok(self.unit_derivative(x / eps, 1) / (eps * eps)),
            2 => Ok(self.unit_derivative(x / eps, 2) / (eps * eps * eps)),
            _ => Err(Error::InvalidArgument(format!(
                "kernel derivative order must be 1 or 2, got {order}"
            ))),
        }
    }

    /// `Φ_ε(x) = ∫_{-∞}^x φ_ε`, computed on demand.
    pub fn cdf(&self, x: f64, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        let u = x / eps;
        if u <= -1.0 {
            return Ok(0.0);
        }
        if u >= 1.0 {
            return Ok(1.0);
        }
        if u == 0.0 {
            return Ok(0.5);
        }
        // Integrate the shorter tail so small masses keep their relative accuracy.
        let spec = QuadratureSpec::new(1e-14, 50)?;
        let tail = |v: f64| integrate(|s| self.eval(s), -1.0, v, &[], &spec);
        let value = if u < 0.0 { tail(u)? } else { 1.0 - tail(-u)? };
        Ok(value.clamp(0.0, 1.0))
    }
}

/// `φ_ε` bound to a fixed scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledKernel {
    base: BumpKernel,
    epsilon: f64,
}

impl ScaledKernel {
    pub fn new(base: BumpKernel, epsilon: f64) -> Result<Self> {
        check_eps(epsilon)?;
        Ok(Self { base, epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn base(&self) -> &BumpKernel {
        &self.base
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.base.eval(x / self.epsilon) / self.epsilon
    }

    /// Derivative of order 0, 1 or 2.
    pub fn derivative(&self, x: f64, order: u8) -> f64 {
        let eps = self.epsilon;
        match order {
            0 => self.eval(x),
            1 => self.base.unit_derivative(x / eps, 1) / (eps * eps),
            _ => self.base.unit_derivative(x / eps, 2) / (eps * eps * eps),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.base.cdf(x, self.epsilon).expect("scale validated at construction")
    }

    /// Maximum of `φ_ε`, i.e. `‖φ‖∞ / ε`.
    pub fn sup_norm(&self) -> f64 {
        self.base.sup_norm / self.epsilon
    }
}
