//! The q-resolvent density, the differences `h_q`, the renormalized zero
//! resolvent `h`, and the hitting-time Laplace ratio.
//!
//! All four are Fourier integrals in `lambda` over `[0, inf)`. With
//! `D = q + Psi` they read
//!
//! ```text
//! r_q(x) = (1/pi) integral [cos(lambda x)(q + theta) - sin(lambda x) omega] / |D|^2
//! h_q(x) = (1/pi) integral [(1 - cos lambda x)(q + theta) - sin(lambda x) omega] / |D|^2
//! ```
//!
//! and `h = h_0` under the integrability assumption on Im(lambda/Psi) near 0.
//! Each integral is split at `lambda_0 = pi / (2|x|)`: a smooth (possibly
//! endpoint-singular) head handled by double-exponential quadrature, then
//! half-period ladders for the cosine and sine tails. The cosine and sine
//! numerators are never recombined; each piece keeps a single sign structure.

use crate::exponent::ExponentEvaluator;
use crate::kernels::one_minus_cos;
use crate::quad::{self, IntegralResult, OscillatoryKind, QuadratureConfig};
use crate::{Assumption, Error, Result};
use serde::Serialize;
use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Window where the near-zero exponent of the sine integrand is fitted; its
/// fitted slope is the numeric shadow of the Im(lambda/Psi) integrability
/// assumption.
const T_PROBE_WINDOW: (f64, f64) = (1e-6, 1e-4);

fn lambda_split(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        PI / (2.0 * x.abs())
    }
}

/// Memoized access to `(q + theta, omega, |q + Psi|^2)` for the integrand
/// closures. The cosine and sine ladders visit the same abscissae, so the
/// cache roughly halves the inner-exponent work for numeric measures; it
/// also carries inner evaluation failures out of the `Fn(f64) -> f64`
/// closures the engines require.
struct PsiProbe<'a> {
    ev: &'a ExponentEvaluator,
    q: f64,
    error: Cell<Option<Error>>,
    cache: RefCell<HashMap<u64, (f64, f64, f64)>>,
}

impl<'a> PsiProbe<'a> {
    fn new(ev: &'a ExponentEvaluator, q: f64) -> Self {
        PsiProbe {
            ev,
            q,
            error: Cell::new(None),
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// `(q + theta(l), omega(l), |q + Psi(l)|^2)`; NaN after a failure.
    fn at(&self, l: f64) -> (f64, f64, f64) {
        let key = l.to_bits();
        if let Some(v) = self.cache.borrow().get(&key) {
            return *v;
        }
        match self.ev.psi_unchecked(l) {
            Ok(p) => {
                let re = self.q + p.theta.value;
                let im = p.omega.value;
                let v = (re, im, re * re + im * im);
                self.cache.borrow_mut().insert(key, v);
                v
            }
            Err(e) => {
                if self.error.take().is_none() {
                    self.error.set(Some(e));
                }
                (f64::NAN, f64::NAN, f64::NAN)
            }
        }
    }

    /// Re-raise any failure captured inside the closures, preferring it over
    /// the (less informative) engine-level outcome.
    fn seal<T>(&self, outcome: Result<T>) -> Result<T> {
        match self.error.take() {
            Some(inner) => Err(inner),
            None => outcome,
        }
    }
}

/// `r_q(x)` for `q > 0`.
pub fn eval_r_q(
    ev: &ExponentEvaluator,
    q: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("r_q needs q > 0, got {q}")));
    }
    let probe = PsiProbe::new(ev, q);
    probe.seal(probe_decay_for_a(&probe, ev))?;

    let cos_env = |l: f64| {
        let (re, _, d) = probe.at(l);
        re / d
    };
    let sin_env = |l: f64| {
        let (_, im, d) = probe.at(l);
        im / d
    };

    let l0 = lambda_split(x);
    let total = if x == 0.0 {
        let head = probe.seal(quad::tanh_sinh(cos_env, 0.0, l0, cfg))?;
        let tail = probe.seal(quad::integrate_decay_tail(cos_env, l0, cfg))?;
        head.merge(tail)
    } else {
        let combined = |l: f64| {
            let (re, im, d) = probe.at(l);
            ((l * x).cos() * re - (l * x).sin() * im) / d
        };
        let head = probe.seal(quad::tanh_sinh(combined, 0.0, l0, cfg))?;
        let cos_tail = probe.seal(quad::integrate_fourier_tail(
            cos_env,
            OscillatoryKind::Cos,
            x,
            l0,
            cfg,
        ))?;
        let sin_tail = if ev.omega_is_zero() {
            IntegralResult::exact(0.0)
        } else {
            probe.seal(quad::integrate_fourier_tail(
                sin_env,
                OscillatoryKind::Sin,
                x,
                l0,
                cfg,
            ))?
        };
        head.merge(cos_tail).merge(sin_tail.scaled(-1.0))
    };
    Ok(clip_nonnegative(total.scaled(1.0 / PI)))
}

/// `h_q(x) = r_q(0) - r_q(-x)` for `q > 0`, evaluated as one combined
/// integral for cancellation control.
pub fn eval_h_q(
    ev: &ExponentEvaluator,
    q: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("h_q needs q > 0, got {q}")));
    }
    h_kernel(ev, q, x, cfg)
}

/// The renormalized zero resolvent
/// `h(x) = (1/pi) integral Re((1 - e^{i lambda x}) / Psi(lambda)) d lambda`.
///
/// Requires the integrand's fitted exponent near 0 to stay above -1 (the
/// integrability of Im(lambda/Psi), probed numerically before evaluation).
pub fn eval_h(ev: &ExponentEvaluator, x: f64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    h_kernel(ev, 0.0, x, cfg)
}

/// Shared kernel for `h_q` (q > 0) and `h` (q = 0).
fn h_kernel(
    ev: &ExponentEvaluator,
    q: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if x == 0.0 {
        return Ok(IntegralResult::exact(0.0));
    }
    let probe = PsiProbe::new(ev, q);
    if q == 0.0 {
        probe.seal(probe_sine_integrand_at_zero(&probe, ev, x))?;
    }

    let theta_env = |l: f64| {
        let (re, _, d) = probe.at(l);
        re / d
    };
    let omega_env = |l: f64| {
        let (_, im, d) = probe.at(l);
        im / d
    };

    let l0 = lambda_split(x);
    let head = {
        // The sine part may carry an integrable singularity lambda^{1-beta}
        // at the origin; the double-exponential grid absorbs it without
        // needing the exponent.
        let combined = |l: f64| {
            let (re, im, d) = probe.at(l);
            (one_minus_cos(l * x) * re - (l * x).sin() * im) / d
        };
        probe.seal(quad::tanh_sinh(combined, 0.0, l0, cfg))?
    };
    let cos_tail = probe
        .seal(quad::integrate_fourier_tail(
            theta_env,
            OscillatoryKind::OneMinusCos,
            x,
            l0,
            cfg,
        ))
        .map_err(map_slow_decay_to_a)?;
    let sin_tail = if ev.omega_is_zero() {
        IntegralResult::exact(0.0)
    } else {
        probe.seal(quad::integrate_fourier_tail(
            omega_env,
            OscillatoryKind::Sin,
            x,
            l0,
            cfg,
        ))?
    };

    let total = head
        .merge(cos_tail)
        .merge(sin_tail.scaled(-1.0))
        .scaled(1.0 / PI);
    Ok(clip_nonnegative(total))
}

/// `E_x[e^{-q T_0}] = r_q(-x) / r_q(0)`, in [0, 1].
pub fn hitting_laplace_ratio(
    ev: &ExponentEvaluator,
    q: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if x == 0.0 {
        return Ok(IntegralResult::exact(1.0));
    }
    let origin = eval_r_q(ev, q, 0.0, cfg)?;
    if origin.value <= origin.error_estimate {
        return Err(Error::DegenerateResolvent {
            value: origin.value,
            error_estimate: origin.error_estimate,
        });
    }
    let shifted = eval_r_q(ev, q, -x, cfg)?;
    let ratio = shifted.value / origin.value;
    let err = (shifted.error_estimate + ratio.abs() * origin.error_estimate) / origin.value;
    let clamped = ratio.clamp(0.0, 1.0);
    Ok(IntegralResult {
        value: clamped,
        error_estimate: err + (ratio - clamped).abs(),
        segments_used: origin.segments_used + shifted.segments_used,
        truncation_point: origin.truncation_point.max(shifted.truncation_point),
        converged: origin.converged && shifted.converged,
    })
}

fn clip_nonnegative(mut r: IntegralResult) -> IntegralResult {
    if r.value < 0.0 && r.value >= -2.0 * r.error_estimate {
        r.error_estimate += r.value.abs();
        r.value = 0.0;
    }
    r
}

fn map_slow_decay_to_a(e: Error) -> Error {
    match e {
        Error::SlowDecay { fitted } => Error::AssumptionViolated {
            assumption: Assumption::A,
            detail: format!(
                "1/|q + Psi| decays with fitted exponent {fitted:.3} <= 1; the resolvent integral diverges"
            ),
        },
        other => other,
    }
}

/// Quick fitted-decay witness of the resolvent-existence assumption for one
/// q: 1/|q + Psi(lambda)| must fall off faster than 1/lambda.
fn probe_decay_for_a(probe: &PsiProbe, ev: &ExponentEvaluator) -> Result<()> {
    if ev.gaussian_coeff() > 0.0 {
        // theta grows like a lambda^2; nothing to probe.
        return Ok(());
    }
    let fit = quad::fit_power_exponent(|l| 1.0 / probe.at(l).2.sqrt(), 1e4, 1e5);
    match fit {
        Some(f) if -f.exponent <= 1.0 => Err(Error::AssumptionViolated {
            assumption: Assumption::A,
            detail: format!(
                "fitted decay exponent of 1/|q + Psi| at the frontier is {:.3} <= 1",
                -f.exponent
            ),
        }),
        _ => Ok(()),
    }
}

/// Numeric shadow of the zero-resolvent integrability requirement: the sine
/// integrand `sin(lambda x) omega / |Psi|^2` must have a fitted local
/// exponent above -1 near lambda = 0.
fn probe_sine_integrand_at_zero(probe: &PsiProbe, ev: &ExponentEvaluator, x: f64) -> Result<()> {
    if ev.omega_is_zero() {
        return Ok(());
    }
    let g = |l: f64| {
        let (_, im, d) = probe.at(l);
        if d == 0.0 {
            return 0.0;
        }
        (l * x).sin() * im / d
    };
    if let Some(fit) = quad::fit_power_exponent(g, T_PROBE_WINDOW.0, T_PROBE_WINDOW.1) {
        if fit.exponent <= -1.0 {
            return Err(Error::AssumptionViolated {
                assumption: Assumption::T,
                detail: format!(
                    "sine integrand behaves like lambda^{:.3} near 0; the representation integral diverges",
                    fit.exponent
                ),
            });
        }
    }
    Ok(())
}

// --- Grid API -----------------------------------------------------------------

/// One row of a resolvent table.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GridRow {
    pub q: f64,
    pub x: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub truncation_point: f64,
    pub segments: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// `r_q(x)` rows.
    Resolvent,
    /// `h_q(x)` rows, with `q = 0` meaning `h(x)`.
    Difference,
}

/// Evaluate a set of (q, x) queries, fanning out across threads when the
/// `parallel` feature is on. Row order and every value are independent of
/// the thread count.
pub fn eval_grid(
    ev: &ExponentEvaluator,
    kind: GridKind,
    queries: &[(f64, f64)],
    cfg: &QuadratureConfig,
) -> Vec<Result<GridRow>> {
    crate::grid::map_points(queries, |&(q, x)| {
        let r = match (kind, q) {
            (GridKind::Resolvent, q) => eval_r_q(ev, q, x, cfg)?,
            (GridKind::Difference, q) if q == 0.0 => eval_h(ev, x, cfg)?,
            (GridKind::Difference, q) => eval_h_q(ev, q, x, cfg)?,
        };
        Ok(GridRow {
            q,
            x,
            value: r.value,
            error_estimate: r.error_estimate,
            truncation_point: r.truncation_point,
            segments: r.segments_used,
        })
    })
}

/// CSV serialization of grid rows: full 17-significant-digit decimals so
/// that downstream ratio computations see no extra rounding.
pub fn grid_rows_to_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("q,x,value,error_estimate,truncation_point,segments\n");
    for row in rows {
        out.push_str(&format!(
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}\n",
            row.q, row.x, row.value, row.error_estimate, row.truncation_point, row.segments
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            ..QuadratureConfig::default()
        }
    }

    fn brownian_half() -> ExponentEvaluator {
        ExponentEvaluator::brownian(0.5, 0.0)
    }

    #[test]
    fn brownian_resolvent_closed_form() {
        // For Psi = lambda^2/2: r_q(x) = e^{-sqrt(2q)|x|} / sqrt(2q).
        let ev = brownian_half();
        let r = eval_r_q(&ev, 0.5, 0.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);

        let r = eval_r_q(&ev, 0.5, 1.0, &cfg()).unwrap();
        let expect = (-1.0f64).exp();
        assert!((r.value - expect).abs() < 1e-9 * expect, "{}", r.value);
    }

    #[test]
    fn stable_resolvent_at_origin() {
        // (1/pi) integral 1/(1 + lambda^1.5) = (1/1.5)/sin(pi/1.5)
        let ev = ExponentEvaluator::closed_form_stable(1.0, 0.0, 1.5).unwrap();
        let r = eval_r_q(&ev, 1.0, 0.0, &cfg()).unwrap();
        let expect = (PI / 1.5) / (PI / 1.5).sin() / PI;
        assert!((r.value - expect).abs() < 1e-9 * expect, "{} vs {expect}", r.value);
    }

    #[test]
    fn brownian_h_q_closed_form() {
        // h_q(x) = (1 - e^{-sqrt(2q)|x|}) / sqrt(2q)
        let ev = brownian_half();
        let r = eval_h_q(&ev, 0.5, 1.0, &cfg()).unwrap();
        let expect = 1.0 - (-1.0f64).exp();
        assert!((r.value - expect).abs() < 1e-9, "{} vs {expect}", r.value);
        assert_eq!(eval_h_q(&ev, 0.5, 0.0, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn brownian_h_is_absolute_value() {
        let ev = brownian_half();
        for &x in &[0.25, 2.0, -3.5] {
            let r = eval_h(&ev, x, &cfg()).unwrap();
            assert!(
                (r.value - x.abs()).abs() < 1e-8 * x.abs(),
                "h({x}) = {} vs {}",
                r.value,
                x.abs()
            );
        }
        assert_eq!(eval_h(&ev, 0.0, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn symmetric_stable_h_matches_cosine_moment_scaling() {
        // theta = lambda^1.5 exactly: h(x) = C_{1.5} |x|^{0.5}.
        let ev = ExponentEvaluator::closed_form_stable(1.0, 0.0, 1.5).unwrap();
        let c = quad::c_alpha(1.5).unwrap();
        for &x in &[1.0, -1.0, 0.04] {
            let r = eval_h(&ev, x, &cfg()).unwrap();
            let expect = c * x.abs().sqrt();
            assert!(
                (r.value - expect).abs() < 1e-8 * expect,
                "h({x}) = {} vs {expect}",
                r.value
            );
        }
    }

    #[test]
    fn hitting_ratio_brownian() {
        let ev = brownian_half();
        let r = hitting_laplace_ratio(&ev, 0.5, 1.0, &cfg()).unwrap();
        let expect = (-1.0f64).exp();
        assert!((r.value - expect).abs() < 1e-8, "{}", r.value);
        assert_eq!(hitting_laplace_ratio(&ev, 2.0, 0.0, &cfg()).unwrap().value, 1.0);

        // Nonincreasing in q at fixed x.
        let hi = hitting_laplace_ratio(&ev, 0.25, 1.0, &cfg()).unwrap();
        let lo = hitting_laplace_ratio(&ev, 4.0, 1.0, &cfg()).unwrap();
        assert!(hi.value >= lo.value);
    }

    #[test]
    fn h_q_equals_resolvent_difference() {
        let ev = ExponentEvaluator::closed_form_stable(1.0, -0.3, 1.5).unwrap();
        let q = 1.0;
        for &x in &[1.0, -0.7] {
            let combined = eval_h_q(&ev, q, x, &cfg()).unwrap();
            let r0 = eval_r_q(&ev, q, 0.0, &cfg()).unwrap();
            let rx = eval_r_q(&ev, q, -x, &cfg()).unwrap();
            let diff = r0.value - rx.value;
            let budget =
                3.0 * (combined.error_estimate + r0.error_estimate + rx.error_estimate);
            assert!(
                (combined.value - diff).abs() <= budget.max(1e-11),
                "x={x}: {} vs {diff}",
                combined.value
            );
        }
    }

    #[test]
    fn asymmetric_stable_h_uses_both_signs() {
        // With c_omega != 0 the two sides of the origin get different
        // constants: h(x) = C (1 + sgn(x) c_omega cot(pi alpha/2)) |x|^{a-1}
        // up to the common normalization.
        let alpha = 1.5f64;
        let c_omega = -0.4;
        let ev = ExponentEvaluator::closed_form_stable(1.0, c_omega, alpha).unwrap();
        let c = quad::c_alpha(alpha).unwrap();
        let cot = 1.0 / (PI * alpha / 2.0).tan();
        let denom = 1.0 + c_omega * c_omega;
        for &x in &[0.5f64, -0.5] {
            let expect = c / denom * (1.0 + x.signum() * c_omega * cot) * x.abs().powf(alpha - 1.0);
            let r = eval_h(&ev, x, &cfg()).unwrap();
            assert!(
                (r.value - expect).abs() < 1e-8 * expect.abs(),
                "h({x}) = {} vs {expect}",
                r.value
            );
        }
    }

    #[test]
    fn grid_rows_are_deterministic_and_ordered() {
        let ev = brownian_half();
        let queries: Vec<(f64, f64)> = (1..=20).map(|i| (0.5, i as f64 * 0.1)).collect();
        let rows1: Vec<GridRow> = eval_grid(&ev, GridKind::Difference, &queries, &cfg())
            .into_iter()
            .map(|r| r.unwrap())
            .collect();
        let rows2: Vec<GridRow> = eval_grid(&ev, GridKind::Difference, &queries, &cfg())
            .into_iter()
            .map(|r| r.unwrap())
            .collect();
        let csv1 = grid_rows_to_csv(&rows1);
        let csv2 = grid_rows_to_csv(&rows2);
        assert_eq!(csv1, csv2);
        assert!(csv1.starts_with("q,x,value,error_estimate,truncation_point,segments\n"));
        for (row, &(q, x)) in rows1.iter().zip(&queries) {
            assert_eq!((row.q, row.x), (q, x));
        }
    }
}
