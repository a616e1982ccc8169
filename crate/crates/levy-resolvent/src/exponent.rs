//! Evaluation of the exponents `theta`, `omega` and `Psi = theta + i omega`,
//! either in closed form (Brownian, strictly stable) or by quadrature over
//! the jump density.
//!
//! The measure integrals are computed in the rescaled variable `u = lambda x`
//! so that the oscillation always has frequency one:
//!
//! ```text
//! integral (1 - cos lambda x) xi(x) dx
//!   = (1/lambda) integral (1 - cos u) xi(u/lambda) du
//! ```
//!
//! split into a singular head on (0, 8 pi], the envelope's DC tail and an
//! accelerated cosine ladder. The compensated sine integral keeps
//! `u - sin u` combined below the compensator boundary `u = lambda` (that is
//! `x = 1`), where the two halves would separately diverge.

use crate::levy::{LevyProcessSpec, MeasureSpec};
use crate::quad::{
    self, IntegralResult, OscillatoryKind, QuadratureConfig,
};
use crate::kernels::{one_minus_cos, x_minus_sin};
use crate::{Error, Result};
use num_complex::Complex64;

const U_HEAD: f64 = 8.0 * std::f64::consts::PI;

/// Largest |lambda| accepted by the public numeric-mode entry points.
pub const LAMBDA_CAP: f64 = 1e6;

#[derive(Debug, Clone)]
pub enum EvalMode {
    /// `theta = c_theta |lambda|^alpha`, `omega = c_omega sgn(lambda) |lambda|^alpha`.
    ClosedFormStable { c_theta: f64, c_omega: f64, alpha: f64 },
    /// `theta = a lambda^2`, `omega = b lambda`.
    ClosedFormBrownian,
    /// Quadrature over the jump density of the spec.
    NumericFromMeasure { quad: QuadratureConfig },
}

/// Both exponents at one `lambda`, with their quadrature diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct PsiValue {
    pub theta: IntegralResult,
    pub omega: IntegralResult,
}

impl PsiValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.theta.value, self.omega.value)
    }

    pub fn abs_sq(&self) -> f64 {
        self.theta.value * self.theta.value + self.omega.value * self.omega.value
    }

    pub fn abs(&self) -> f64 {
        self.abs_sq().sqrt()
    }

    pub fn error_estimate(&self) -> f64 {
        self.theta.error_estimate + self.omega.error_estimate
    }
}

/// Strategy object for exponent evaluation. Immutable after construction and
/// safe to share across threads.
#[derive(Debug, Clone)]
pub struct ExponentEvaluator {
    spec: LevyProcessSpec,
    mode: EvalMode,
    /// Power of xi at the origin per side (None: side carries no mass there).
    origin_power_plus: Option<f64>,
    origin_power_minus: Option<f64>,
}

impl ExponentEvaluator {
    pub fn brownian(a: f64, b: f64) -> Self {
        ExponentEvaluator {
            spec: LevyProcessSpec::brownian(a, b),
            mode: EvalMode::ClosedFormBrownian,
            origin_power_plus: None,
            origin_power_minus: None,
        }
    }

    pub fn closed_form_stable(c_theta: f64, c_omega: f64, alpha: f64) -> Result<Self> {
        if !(c_theta > 0.0) {
            return Err(Error::Domain(format!("c_theta must be positive, got {c_theta}")));
        }
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::Domain(format!("alpha must lie in (1, 2), got {alpha}")));
        }
        Ok(ExponentEvaluator {
            spec: LevyProcessSpec::brownian(0.0, 0.0),
            mode: EvalMode::ClosedFormStable {
                c_theta,
                c_omega,
                alpha,
            },
            origin_power_plus: None,
            origin_power_minus: None,
        })
    }

    /// Numeric evaluation over the spec's jump density.
    pub fn from_measure(spec: LevyProcessSpec, quad: QuadratureConfig) -> Result<Self> {
        spec.validate()?;
        quad.validate()?;
        let origin_power_plus = resolve_origin_power(&spec, Side::Plus)?;
        let origin_power_minus = resolve_origin_power(&spec, Side::Minus)?;
        Ok(ExponentEvaluator {
            spec,
            mode: EvalMode::NumericFromMeasure { quad },
            origin_power_plus,
            origin_power_minus,
        })
    }

    /// Closed form equivalent to the spec, when one exists: a pure Brownian
    /// triplet, or a stable density whose drift cancels the compensator's
    /// linear term (so both exponents are exact power laws).
    pub fn closed_form_for(spec: &LevyProcessSpec) -> Result<Option<Self>> {
        match &spec.measure {
            MeasureSpec::Zero => Ok(Some(ExponentEvaluator::brownian(spec.a, spec.b))),
            MeasureSpec::Stable { k_plus, k_minus, alpha } if spec.a == 0.0 => {
                let strict_b = (k_plus - k_minus) / (alpha - 1.0);
                if (spec.b - strict_b).abs() > 1e-12 * (1.0 + strict_b.abs()) {
                    return Ok(None);
                }
                let c_theta =
                    std::f64::consts::PI * (k_plus + k_minus) * quad::c_alpha(alpha + 1.0)?;
                let c_omega =
                    (k_plus - k_minus) * std::f64::consts::PI * quad::c_alpha(*alpha)? / alpha;
                Ok(Some(ExponentEvaluator::closed_form_stable(
                    c_theta, c_omega, *alpha,
                )?))
            }
            _ => Ok(None),
        }
    }

    pub fn spec(&self) -> &LevyProcessSpec {
        &self.spec
    }

    pub fn mode(&self) -> &EvalMode {
        &self.mode
    }

    /// Gaussian coefficient of the underlying triplet (0 for the closed
    /// stable family).
    pub fn gaussian_coeff(&self) -> f64 {
        self.spec.a
    }

    /// Whether `omega` vanishes identically.
    pub fn omega_is_zero(&self) -> bool {
        match &self.mode {
            EvalMode::ClosedFormStable { c_omega, .. } => *c_omega == 0.0,
            EvalMode::ClosedFormBrownian => self.spec.b == 0.0,
            EvalMode::NumericFromMeasure { .. } => {
                self.spec.b == 0.0 && self.spec.measure.is_symmetric()
            }
        }
    }

    /// `theta(lambda) = a lambda^2 + integral (1 - cos lambda x) nu(dx)`,
    /// even in lambda, zero at zero.
    pub fn theta(&self, lambda: f64) -> Result<IntegralResult> {
        self.check_cap(lambda)?;
        self.theta_unchecked(lambda)
    }

    /// `omega(lambda) = b lambda + integral (lambda x 1_{|x|<1} - sin lambda x) nu(dx)`,
    /// odd in lambda, zero at zero.
    pub fn omega(&self, lambda: f64) -> Result<IntegralResult> {
        self.check_cap(lambda)?;
        self.omega_unchecked(lambda)
    }

    /// `Psi(lambda) = theta(lambda) + i omega(lambda)`.
    pub fn psi(&self, lambda: f64) -> Result<PsiValue> {
        self.check_cap(lambda)?;
        self.psi_unchecked(lambda)
    }

    fn check_cap(&self, lambda: f64) -> Result<()> {
        if matches!(self.mode, EvalMode::NumericFromMeasure { .. }) && lambda.abs() > LAMBDA_CAP {
            return Err(Error::LambdaOutOfRange(lambda.abs()));
        }
        if !lambda.is_finite() {
            return Err(Error::Domain(format!("lambda must be finite, got {lambda}")));
        }
        Ok(())
    }

    /// Uncapped evaluation for internal semi-infinite integrals, where the
    /// rescaled quadrature keeps full accuracy at any frequency.
    pub(crate) fn theta_unchecked(&self, lambda: f64) -> Result<IntegralResult> {
        let l = lambda.abs();
        if l == 0.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        match &self.mode {
            EvalMode::ClosedFormStable { c_theta, alpha, .. } => {
                Ok(IntegralResult::exact(c_theta * l.powf(*alpha)))
            }
            EvalMode::ClosedFormBrownian => Ok(IntegralResult::exact(self.spec.a * l * l)),
            EvalMode::NumericFromMeasure { quad } => {
                let mut out = IntegralResult::exact(self.spec.a * l * l);
                let m = &self.spec.measure;
                if let Some(p) = self.origin_power_plus {
                    let s = m.support_start_plus();
                    out = out.merge(side_theta(&|x| m.xi_plus(x), p, s, l, quad)?);
                }
                if let Some(p) = self.origin_power_minus {
                    let s = m.support_start_minus();
                    out = out.merge(side_theta(&|x| m.xi_minus(x), p, s, l, quad)?);
                }
                Ok(out)
            }
        }
    }

    pub(crate) fn omega_unchecked(&self, lambda: f64) -> Result<IntegralResult> {
        if lambda == 0.0 {
            return Ok(IntegralResult::exact(0.0));
        }
        let sign = lambda.signum();
        let l = lambda.abs();
        let out = match &self.mode {
            EvalMode::ClosedFormStable { c_omega, alpha, .. } => {
                IntegralResult::exact(c_omega * l.powf(*alpha))
            }
            EvalMode::ClosedFormBrownian => IntegralResult::exact(self.spec.b * l),
            EvalMode::NumericFromMeasure { quad } => {
                let mut out = IntegralResult::exact(self.spec.b * l);
                let m = &self.spec.measure;
                if let Some(p) = self.origin_power_plus {
                    let s = m.support_start_plus();
                    out = out.merge(side_omega(&|x| m.xi_plus(x), p, s, l, quad)?);
                }
                if let Some(p) = self.origin_power_minus {
                    let s = m.support_start_minus();
                    out = out.merge(side_omega(&|x| m.xi_minus(x), p, s, l, quad)?.scaled(-1.0));
                }
                out
            }
        };
        Ok(out.scaled(sign))
    }

    pub(crate) fn psi_unchecked(&self, lambda: f64) -> Result<PsiValue> {
        Ok(PsiValue {
            theta: self.theta_unchecked(lambda)?,
            omega: self.omega_unchecked(lambda)?,
        })
    }
}

#[derive(Clone, Copy)]
enum Side {
    Plus,
    Minus,
}

/// Origin exponent of the side density: from the declared hint when present,
/// otherwise a log-log fit over x in [1e-6, 1e-3]. `None` when the side is
/// identically zero near the origin and beyond.
fn resolve_origin_power(spec: &LevyProcessSpec, side: Side) -> Result<Option<f64>> {
    let xi = |x: f64| match side {
        Side::Plus => spec.measure.xi_plus(x),
        Side::Minus => spec.measure.xi_minus(x),
    };
    let carries_mass = [1e-6, 1e-3, 1e-1, 1.0, 10.0, 1e3].iter().any(|&x| xi(x) != 0.0);
    if !carries_mass {
        return Ok(None);
    }
    let power = match spec.measure.origin_hint() {
        Some(h) => {
            let k = match side {
                Side::Plus => h.k_plus,
                Side::Minus => h.k_minus,
            };
            if k > 0.0 {
                -h.alpha - 1.0
            } else {
                0.0
            }
        }
        None => match quad::fit_power_exponent(xi, 1e-6, 1e-3) {
            Some(fit) => fit.exponent,
            // Mass exists but not near the origin (e.g. a cutoff density).
            None => 0.0,
        },
    };
    if power <= -3.0 {
        return Err(Error::NonIntegrableMeasure(format!(
            "density behaves like x^{power:.3} at the origin; integral of x^2 against it diverges"
        )));
    }
    Ok(Some(power))
}

/// `integral over (0, inf) of (1 - cos lambda x) xi(x) dx` for lambda > 0.
/// `support_start` is the infimum of the support of xi in x.
fn side_theta(
    xi: &dyn Fn(f64) -> f64,
    origin_power: f64,
    support_start: f64,
    lambda: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    let envelope = |u: f64| xi(u / lambda);
    let u_start = lambda * support_start;
    if u_start >= U_HEAD {
        // No origin singularity in play; split 1 - cos directly.
        let dc = quad::integrate_decay_tail(envelope, u_start, cfg)?;
        let osc =
            quad::integrate_fourier_tail(envelope, OscillatoryKind::Cos, 1.0, u_start, cfg)?;
        return Ok(dc.merge(osc.scaled(-1.0)).scaled(1.0 / lambda));
    }
    let head = quad::tanh_sinh_from(
        |u| one_minus_cos(u) * envelope(u),
        2.0 + origin_power,
        u_start,
        U_HEAD,
        cfg,
    )?;
    let dc = quad::integrate_decay_tail(envelope, U_HEAD, cfg)?;
    let osc = quad::integrate_fourier_tail(envelope, OscillatoryKind::Cos, 1.0, U_HEAD, cfg)?;
    Ok(head.merge(dc).merge(osc.scaled(-1.0)).scaled(1.0 / lambda))
}

/// `integral over (0, inf) of (lambda x 1_{x<1} - sin lambda x) xi(x) dx`
/// for lambda > 0. In the rescaled variable the compensator boundary sits at
/// `u = lambda`:
///
/// ```text
/// (s, u1]   : (u - sin u) xi(u/lambda)        u1 = min(lambda, 8 pi)
/// [u1, l]   : u xi(u/lambda)                  (only when lambda > u1)
/// [u1, inf) : -sin(u) xi(u/lambda)
/// ```
///
/// where `s = lambda * support_start`; the combined kernel must be kept
/// whole near the origin because its two halves separately diverge there.
fn side_omega(
    xi: &dyn Fn(f64) -> f64,
    origin_power: f64,
    support_start: f64,
    lambda: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    let envelope = |u: f64| xi(u / lambda);
    let u1 = lambda.min(U_HEAD);
    let u_start = lambda * support_start;

    if u_start >= u1 {
        // Support begins past the head zone; no singularity to shield.
        let lin = if u_start < lambda {
            quad::integrate_geometric(|u| u * envelope(u), u_start, lambda, cfg)?
        } else {
            IntegralResult::exact(0.0)
        };
        let start = u_start.max(u1);
        let osc =
            quad::integrate_fourier_tail(envelope, OscillatoryKind::Sin, 1.0, start, cfg)?;
        return Ok(lin.merge(osc.scaled(-1.0)).scaled(1.0 / lambda));
    }

    let head = quad::tanh_sinh_from(
        |u| x_minus_sin(u) * envelope(u),
        3.0 + origin_power,
        u_start,
        u1,
        cfg,
    )?;
    let lin = if lambda > u1 {
        quad::integrate_geometric(|u| u * envelope(u), u1, lambda, cfg)?
    } else {
        IntegralResult::exact(0.0)
    };
    let osc = quad::integrate_fourier_tail(envelope, OscillatoryKind::Sin, 1.0, u1, cfg)?;
    Ok(head.merge(lin).merge(osc.scaled(-1.0)).scaled(1.0 / lambda))
}
