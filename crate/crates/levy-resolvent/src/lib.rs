//! Exponents, resolvent densities and the renormalized zero resolvent of
//! one-dimensional Levy processes.
//!
//! A process is given by its characteristic triplet `(a, b, nu)`; the
//! Levy-Khinchin exponent splits as `Psi = theta + i omega` with
//!
//! ```text
//! theta(lambda) = a lambda^2 + integral (1 - cos lambda x) nu(dx)
//! omega(lambda) = b lambda + integral (lambda x 1_{|x|<1} - sin lambda x) nu(dx)
//! ```
//!
//! On top of the exponents the crate evaluates the q-resolvent density
//! `r_q(x) = (1/pi) integral Re(e^{-i lambda x} / (q + Psi(lambda))) d lambda`,
//! the differences `h_q(x) = r_q(0) - r_q(-x)`, their q -> 0 limit `h` (the
//! renormalized zero resolvent), and the regular-variation machinery that
//! predicts and verifies the power-law behavior of `h` at the origin and at
//! infinity.
//!
//! Everything is pure and reentrant; batch entry points fan out over rayon
//! when the `parallel` feature (default) is enabled, and results are
//! bit-identical regardless of thread count.

mod error;
pub mod kernels;

pub mod asymptotics;
pub mod exponent;
pub mod grid;
pub mod levy;
pub mod quad;
pub mod resolvent;

pub use error::{Assumption, Error, Result};
pub use exponent::{EvalMode, ExponentEvaluator, PsiValue};
pub use levy::{LevyProcessSpec, MeasureSpec};
pub use quad::{IntegralResult, QuadratureConfig};
