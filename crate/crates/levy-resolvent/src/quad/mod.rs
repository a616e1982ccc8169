//! Numerical engines for the three integral shapes the library needs:
//! endpoint-singular integrals over a jump density, oscillatory semi-infinite
//! Fourier-type integrals, and the special constants built on the Gamma
//! function.

mod accel;
mod gk;
mod oscillatory;
mod special;
mod tanh_sinh;

pub use gk::adaptive_gk;
pub use oscillatory::{
    fit_power_exponent, integrate_decay_tail, integrate_fourier_tail, integrate_geometric,
    OscillatoryKind, PowerFit,
};
pub use special::{c_alpha, gamma_fn, sine_moment, xsin_moment};
pub use tanh_sinh::{integrate_singular, tanh_sinh, tanh_sinh_from};

use serde::{Deserialize, Serialize};

/// Tolerances and budgets for the quadrature engines.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Relative tolerance target on each integral value.
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    /// Absolute tolerance floor.
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    /// Budget of subintervals / ladder segments per integral.
    #[serde(default = "default_max_segments")]
    pub max_segments: usize,
    /// Target for the truncated-tail remainder of semi-infinite integrals.
    #[serde(default = "default_truncation_budget")]
    pub truncation_budget: f64,
    /// Maximum order of the alternating-series extrapolation table.
    #[serde(default = "default_acceleration_order")]
    pub acceleration_order: usize,
}

fn default_rel_tol() -> f64 {
    1e-9
}
fn default_abs_tol() -> f64 {
    1e-12
}
fn default_max_segments() -> usize {
    10_000
}
fn default_truncation_budget() -> f64 {
    1e-10
}
fn default_acceleration_order() -> usize {
    8
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            max_segments: default_max_segments(),
            truncation_budget: default_truncation_budget(),
            acceleration_order: default_acceleration_order(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(crate::Error::Domain(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_segments < 16 {
            return Err(crate::Error::Domain(
                "maxSegments must be at least 16".into(),
            ));
        }
        Ok(())
    }

    /// Tolerance actually demanded for a value of the given magnitude.
    pub fn target(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale.abs())
    }

    /// A copy with both tolerances tightened by `factor`, for inner integrals
    /// whose error feeds a larger computation.
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureConfig {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..self.clone()
        }
    }
}

/// Value plus diagnostics returned by every engine.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralResult {
    pub value: f64,
    /// Honest (conservative) estimate of the absolute error.
    pub error_estimate: f64,
    /// Subintervals or ladder segments actually used.
    pub segments_used: usize,
    /// Frontier beyond which the integral was bounded rather than summed.
    pub truncation_point: f64,
    /// Whether `error_estimate <= max(absTol, relTol * |value|)` was reached.
    pub converged: bool,
}

impl IntegralResult {
    pub fn exact(value: f64) -> Self {
        IntegralResult {
            value,
            error_estimate: 0.0,
            segments_used: 0,
            truncation_point: 0.0,
            converged: true,
        }
    }

    /// Combine additively with another partial result.
    pub fn merge(self, other: IntegralResult) -> IntegralResult {
        IntegralResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            segments_used: self.segments_used + other.segments_used,
            truncation_point: self.truncation_point.max(other.truncation_point),
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(self, factor: f64) -> IntegralResult {
        IntegralResult {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}
