//! Error types shared across the crate.

use serde::Serialize;
use thiserror::Error;

/// The integrability hypotheses a computation may rely on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Assumption {
    /// Resolvent-density existence: 1/|q + Psi| integrable over (0, inf).
    A,
    /// Adds integrability of |Im(lambda/Psi)| near 0.
    T,
    /// Positive Gaussian coefficient plus global Im-integrability.
    Z,
}

impl std::fmt::Display for Assumption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Assumption::A => write!(f, "A"),
            Assumption::T => write!(f, "T"),
            Assumption::Z => write!(f, "Z"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("Levy measure fails the integrability check: {0}")]
    NonIntegrableMeasure(String),

    #[error("integrand decays too slowly at the frontier (fitted exponent {fitted:.4} <= 1)")]
    SlowDecay { fitted: f64 },

    #[error("assumption ({assumption}) violated: {detail}")]
    AssumptionViolated { assumption: Assumption, detail: String },

    #[error("limit estimate unstable: {0}")]
    UnstableLimit(String),

    #[error("declared case contradicts the numeric probe: {0}")]
    CaseMismatch(String),

    #[error("resolvent degenerate: r_q(0) = {value:e} is below its error estimate {error_estimate:e}")]
    DegenerateResolvent { value: f64, error_estimate: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("|lambda| = {0:e} exceeds 1e6; numeric mode would lose all accuracy to cancellation")]
    LambdaOutOfRange(f64),

    #[error("invalid process spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
