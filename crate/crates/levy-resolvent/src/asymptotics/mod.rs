//! Asymptotic-coefficient formulas, regular-variation transfer from the jump
//! density to the exponents, assumption probes, and the empirical estimators
//! that verify the power laws numerically.

mod probes;

pub use probes::{check_a, check_t, check_z, ProbeFit, ProbeReport, ProbeVerdict, Witness};

use crate::exponent::ExponentEvaluator;
use crate::quad::{self, QuadratureConfig};
use crate::resolvent;
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Which side of the origin (or of infinity) an estimate targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn signum(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Where a slowly varying function is slowly varying.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SvLocation {
    AtZero,
    AtInfinity,
}

/// A positive function with `L(kx)/L(x) -> 1` at its reference point.
#[derive(Clone)]
pub struct SlowlyVaryingFn {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub location: SvLocation,
    /// Exponent used by the Potter-bound diagnostic.
    pub potter_delta: f64,
}

impl std::fmt::Debug for SlowlyVaryingFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SlowlyVaryingFn")
            .field("location", &self.location)
            .field("potter_delta", &self.potter_delta)
            .finish()
    }
}

impl SlowlyVaryingFn {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(
        f: F,
        location: SvLocation,
        potter_delta: f64,
    ) -> Self {
        SlowlyVaryingFn {
            f: Arc::new(f),
            location,
            potter_delta,
        }
    }

    pub fn constant(c: f64, location: SvLocation) -> Self {
        SlowlyVaryingFn::new(move |_| c, location, 0.25)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Soft sanity check: sampled ratios must respect the two-sided Potter
    /// bound `L(y)/L(z) <= 2 max((y/z)^d, (y/z)^{-d})` in the asymptotic
    /// decade. A failure is a warning, not an error.
    pub fn potter_ok(&self) -> bool {
        let window: [f64; 5] = match self.location {
            SvLocation::AtZero => [1e-8, 1e-7, 1e-6, 1e-5, 1e-4],
            SvLocation::AtInfinity => [1e4, 1e5, 1e6, 1e7, 1e8],
        };
        let d = self.potter_delta;
        for &y in &window {
            for &z in &window {
                let ly = self.eval(y);
                let lz = self.eval(z);
                if !(ly > 0.0 && lz > 0.0) {
                    return false;
                }
                let r = y / z;
                if ly / lz > 2.0 * r.powf(d).max(r.powf(-d)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Joint regular-variation data for the exponents:
/// `theta ~ cTheta l^index L(l)`, `omega ~ cOmega l^index L(l)`.
#[derive(Debug, Clone)]
pub struct RegularVariationSpec {
    pub index: f64,
    pub c_theta: f64,
    pub c_omega: f64,
    pub l: SlowlyVaryingFn,
}

impl RegularVariationSpec {
    fn check(&self) -> Result<()> {
        if !(self.c_theta > 0.0) {
            return Err(Error::Domain(format!(
                "cTheta must be positive, got {}",
                self.c_theta
            )));
        }
        if !(self.index > 1.0 && self.index < 2.0) {
            return Err(Error::Domain(format!(
                "regular-variation index must lie in (1, 2), got {}",
                self.index
            )));
        }
        Ok(())
    }
}

/// The two-sided coefficients of the zero-resolvent power law at the origin:
/// `c_pm = C_a / (cTheta^2 + cOmega^2) * (cTheta +- cOmega cot(pi a / 2))`.
///
/// With `cOmega = 0` both coefficients are the same computation, hence
/// bitwise equal.
pub fn coeff_c_pm(rv: &RegularVariationSpec) -> Result<(f64, f64)> {
    rv.check()?;
    let c = quad::c_alpha(rv.index)?;
    if rv.c_omega == 0.0 {
        let v = c / rv.c_theta;
        return Ok((v, v));
    }
    let cot = 1.0 / (PI * rv.index / 2.0).tan();
    let denom = rv.c_theta * rv.c_theta + rv.c_omega * rv.c_omega;
    let plus = c * (rv.c_theta + rv.c_omega * cot) / denom;
    let minus = c * (rv.c_theta - rv.c_omega * cot) / denom;
    Ok((plus, minus))
}

/// Dual coefficients at infinity; structurally the same formula with the
/// small-lambda index in place of the large-lambda one.
pub fn coeff_c_pm_zero(rv0: &RegularVariationSpec) -> Result<(f64, f64)> {
    coeff_c_pm(rv0)
}

/// Magnitude used to judge "the coefficient is zero" cases: the value both
/// coefficients would take in the symmetric situation.
pub fn symmetric_scale(rv: &RegularVariationSpec) -> Result<f64> {
    rv.check()?;
    let c = quad::c_alpha(rv.index)?;
    Ok(c / (rv.c_theta * rv.c_theta + rv.c_omega * rv.c_omega).sqrt())
}

/// Limit of `K_minus / K_plus`, estimated from five geometric sample points
/// in the asymptotic decade. `None` encodes an infinite limit.
fn estimate_k_ratio(
    k_plus: &SlowlyVaryingFn,
    k_minus: &SlowlyVaryingFn,
    window: [f64; 5],
) -> Result<Option<f64>> {
    let kp: Vec<f64> = window.iter().map(|&x| k_plus.eval(x)).collect();
    let km: Vec<f64> = window.iter().map(|&x| k_minus.eval(x)).collect();
    if kp.iter().any(|v| !(v.is_finite() && *v >= 0.0))
        || km.iter().any(|v| !(v.is_finite() && *v >= 0.0))
    {
        return Err(Error::UnstableLimit(
            "slowly varying factors must sample finite and nonnegative".into(),
        ));
    }
    let plus_dead = kp.iter().all(|&v| v == 0.0);
    let minus_dead = km.iter().all(|&v| v == 0.0);
    match (plus_dead, minus_dead) {
        (true, true) => Err(Error::UnstableLimit(
            "both slowly varying factors vanish on the sample window".into(),
        )),
        (true, false) => Ok(None),
        (false, true) => Ok(Some(0.0)),
        (false, false) => {
            let ratios: Vec<f64> = km.iter().zip(&kp).map(|(m, p)| m / p).collect();
            let grows = ratios.windows(2).all(|w| w[1] >= w[0]);
            if ratios.iter().all(|&r| r > 1e6) && grows {
                return Ok(None);
            }
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            let spread = ratios.iter().cloned().fold(f64::MIN, f64::max)
                - ratios.iter().cloned().fold(f64::MAX, f64::min);
            if spread > 0.05 * mean.max(1e-12) {
                return Err(Error::UnstableLimit(format!(
                    "K-/K+ varies by {spread:.3e} (> 5%) across the sample decade; mean {mean:.6e}"
                )));
            }
            Ok(Some(mean))
        }
    }
}

fn skew_factor(k: Option<f64>) -> f64 {
    match k {
        None => -1.0,
        Some(k) => (1.0 - k) / (1.0 + k),
    }
}

/// Transfer regular variation of the density at the origin to the exponents
/// at infinity: `xi_pm(x) ~ x^{-alpha-1} K_pm(x)` as x -> 0+ gives
///
/// ```text
/// theta ~ pi C_{alpha+1} l^alpha L(l),
/// omega ~ ((1-k)/(1+k)) (pi C_alpha / alpha) l^alpha L(l),
/// L(l) = K_plus(1/l) + K_minus(1/l),   k = lim K_minus/K_plus at 0.
/// ```
pub fn density_to_exponent_rv(
    alpha: f64,
    k_plus: &SlowlyVaryingFn,
    k_minus: &SlowlyVaryingFn,
) -> Result<RegularVariationSpec> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::Domain(format!("alpha must lie in (1, 2), got {alpha}")));
    }
    if k_plus.location != SvLocation::AtZero || k_minus.location != SvLocation::AtZero {
        return Err(Error::Domain(
            "density factors must be slowly varying at zero".into(),
        ));
    }
    let k = estimate_k_ratio(k_plus, k_minus, [1e-4, 1e-5, 1e-6, 1e-7, 1e-8])?;
    let c_theta = PI * quad::c_alpha(alpha + 1.0)?;
    let c_omega = skew_factor(k) * PI * quad::c_alpha(alpha)? / alpha;
    let kp = k_plus.clone();
    let km = k_minus.clone();
    let delta = 0.5 * (alpha - 1.0).min(2.0 - alpha);
    let l = SlowlyVaryingFn::new(
        move |lam: f64| kp.eval(1.0 / lam) + km.eval(1.0 / lam),
        SvLocation::AtInfinity,
        delta,
    );
    Ok(RegularVariationSpec {
        index: alpha,
        c_theta,
        c_omega,
        l,
    })
}

/// Origin coefficients for a positive Gaussian part:
/// `c_pm = 1/(2a) +- (1/pi) integral Im(lambda/Psi)`.
///
/// For a symmetric process the imaginary part vanishes identically and the
/// pair is `(1/(2a), 1/(2a))` with no quadrature at all.
pub fn gaussian_coeff_c_pm(ev: &ExponentEvaluator, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let a = ev.gaussian_coeff();
    if !(a > 0.0) {
        return Err(Error::AssumptionViolated {
            assumption: crate::Assumption::Z,
            detail: "the Gaussian coefficient must be positive".into(),
        });
    }
    let half = 1.0 / (2.0 * a);
    if ev.omega_is_zero() {
        return Ok((half, half));
    }

    let im = |l: f64| {
        let p = ev
            .psi_unchecked(l)
            .map(|p| (p.omega.value, p.abs_sq()))
            .unwrap_or((f64::NAN, f64::NAN));
        -l * p.0 / p.1
    };
    if let Some(fit) = quad::fit_power_exponent(im, 1e-6, 1e-4) {
        if fit.exponent <= -1.0 {
            return Err(Error::AssumptionViolated {
                assumption: crate::Assumption::Z,
                detail: format!(
                    "Im(lambda/Psi) behaves like lambda^{:.3} near 0",
                    fit.exponent
                ),
            });
        }
    }
    let head = quad::tanh_sinh(im, 0.0, 1.0, cfg)?;
    let tail = quad::integrate_decay_tail(im, 1.0, cfg).map_err(|e| match e {
        Error::SlowDecay { fitted } => Error::AssumptionViolated {
            assumption: crate::Assumption::Z,
            detail: format!("Im(lambda/Psi) decays with fitted exponent {fitted:.3} <= 1"),
        },
        other => other,
    })?;
    let integral = (head.value + tail.value) / PI;
    Ok((half + integral, half - integral))
}

// --- Small-lambda behavior of the exponents ----------------------------------

/// One-component power law `f(lambda) ~ coefficient * lambda^index L(lambda)`
/// as lambda -> 0+.
#[derive(Debug, Clone)]
pub struct PowerLawAsymptote {
    pub coefficient: f64,
    pub index: f64,
    pub l: SlowlyVaryingFn,
}

/// Small-lambda behavior of both exponents.
#[derive(Debug, Clone)]
pub struct SmallLambdaAsymptotics {
    pub theta: PowerLawAsymptote,
    pub omega: PowerLawAsymptote,
}

impl SmallLambdaAsymptotics {
    /// Joint spec usable by the dual coefficient formula, available when both
    /// components share an index in (1, 2).
    pub fn joint_rv(&self) -> Option<RegularVariationSpec> {
        if (self.theta.index - self.omega.index).abs() > 1e-12 {
            return None;
        }
        if !(self.theta.index > 1.0 && self.theta.index < 2.0) {
            return None;
        }
        Some(RegularVariationSpec {
            index: self.theta.index,
            c_theta: self.theta.coefficient,
            c_omega: self.omega.coefficient,
            l: self.theta.l.clone(),
        })
    }
}

/// Tail data for the regular-variation cases: `xi_pm(x) ~ K_pm(x) x^{-beta-1}`
/// as x -> infinity.
#[derive(Debug, Clone)]
pub struct TailData {
    pub beta_tail: f64,
    pub k_plus: SlowlyVaryingFn,
    pub k_minus: SlowlyVaryingFn,
}

/// Hypothesis set declared for the small-lambda behavior of `theta`.
#[derive(Debug, Clone)]
pub enum ThetaZeroCase {
    /// Density tail regularly varying with index betaTail in (0, 2).
    RegularTail(TailData),
    /// Finite second moment: `theta ~ (a + m2/2) lambda^2`.
    SecondMoment,
}

/// Hypothesis set declared for the small-lambda behavior of `omega`.
#[derive(Debug, Clone)]
pub enum OmegaZeroCase {
    /// betaTail in (0, 1): `omega ~ -skew pi C_{b+1} tan(pi b/2) l^b L`.
    RegularTail(TailData),
    /// Finite first moment outside (-1, 1): `omega ~ c l` with
    /// `c = b - integral_{|x|>=1} x nu(dx)`.
    FirstMomentTail,
    /// The degenerate sub-case of the above (c = 0) with a regularly varying
    /// tail of index betaTail in (1, 3): `omega ~ skew (pi C_b / b) l^b L`.
    DegenerateTail(TailData),
}

const K_TAIL_WINDOW: [f64; 5] = [1e4, 1e5, 1e6, 1e7, 1e8];

/// Small-lambda power laws of the exponents under caller-declared
/// hypotheses. Case selection is explicit; each case is cross-checked
/// against the numeric behavior of the density and rejected with
/// `CaseMismatch` when they disagree.
pub fn exponent_rv_at_zero(
    ev: &ExponentEvaluator,
    theta_case: &ThetaZeroCase,
    omega_case: &OmegaZeroCase,
    cfg: &QuadratureConfig,
) -> Result<SmallLambdaAsymptotics> {
    let spec = ev.spec();
    let theta = match theta_case {
        ThetaZeroCase::RegularTail(tail) => {
            let beta = tail.beta_tail;
            if !(beta > 0.0 && beta < 2.0) {
                return Err(Error::Domain(format!(
                    "theta tail case needs betaTail in (0, 2), got {beta}"
                )));
            }
            verify_tail_exponent(spec, beta)?;
            PowerLawAsymptote {
                coefficient: PI * quad::c_alpha(beta + 1.0)?,
                index: beta,
                l: tail_l(tail),
            }
        }
        ThetaZeroCase::SecondMoment => {
            let m2 = second_moment(spec, cfg)?;
            PowerLawAsymptote {
                coefficient: spec.a + 0.5 * m2,
                index: 2.0,
                l: SlowlyVaryingFn::constant(1.0, SvLocation::AtZero),
            }
        }
    };

    let omega = match omega_case {
        OmegaZeroCase::RegularTail(tail) => {
            let beta = tail.beta_tail;
            if !(beta > 0.0 && beta < 1.0) {
                return Err(Error::Domain(format!(
                    "omega tail case needs betaTail in (0, 1), got {beta}"
                )));
            }
            verify_tail_exponent(spec, beta)?;
            let k0 = estimate_k_ratio(&tail.k_plus, &tail.k_minus, K_TAIL_WINDOW)?;
            PowerLawAsymptote {
                coefficient: -skew_factor(k0)
                    * PI
                    * quad::c_alpha(beta + 1.0)?
                    * (PI * beta / 2.0).tan(),
                index: beta,
                l: tail_l(tail),
            }
        }
        OmegaZeroCase::FirstMomentTail => {
            let c1 = first_moment_coefficient(spec, cfg)?;
            PowerLawAsymptote {
                coefficient: c1,
                index: 1.0,
                l: SlowlyVaryingFn::constant(1.0, SvLocation::AtZero),
            }
        }
        OmegaZeroCase::DegenerateTail(tail) => {
            let beta = tail.beta_tail;
            if !(beta > 1.0 && beta < 3.0) {
                return Err(Error::Domain(format!(
                    "degenerate omega case needs betaTail in (1, 3), got {beta}"
                )));
            }
            let c1 = first_moment_coefficient(spec, cfg)?;
            let scale = spec.b.abs().max(1.0);
            if c1.abs() > 1e-8 * scale {
                return Err(Error::CaseMismatch(format!(
                    "declared the degenerate case but b - integral_{{|x|>=1}} x nu(dx) = {c1:.6e} != 0"
                )));
            }
            verify_tail_exponent(spec, beta)?;
            let k0 = estimate_k_ratio(&tail.k_plus, &tail.k_minus, K_TAIL_WINDOW)?;
            PowerLawAsymptote {
                coefficient: skew_factor(k0) * PI * quad::c_alpha(beta)? / beta,
                index: beta,
                l: tail_l(tail),
            }
        }
    };

    Ok(SmallLambdaAsymptotics { theta, omega })
}

fn tail_l(tail: &TailData) -> SlowlyVaryingFn {
    let kp = tail.k_plus.clone();
    let km = tail.k_minus.clone();
    SlowlyVaryingFn::new(
        move |lam: f64| kp.eval(1.0 / lam) + km.eval(1.0 / lam),
        SvLocation::AtZero,
        0.25,
    )
}

/// The declared tail index must match the fitted decay of the density.
fn verify_tail_exponent(spec: &crate::LevyProcessSpec, beta: f64) -> Result<()> {
    let m = &spec.measure;
    let fit = quad::fit_power_exponent(|x| m.xi_plus(x) + m.xi_minus(x), 1e3, 1e5);
    if let Some(f) = fit {
        if (f.exponent + beta + 1.0).abs() > 0.2 {
            return Err(Error::CaseMismatch(format!(
                "declared tail index {beta} but the density decays like x^{:.3}",
                f.exponent
            )));
        }
    }
    Ok(())
}

/// `integral x^2 nu(dx)`, finite or `CaseMismatch`.
fn second_moment(spec: &crate::LevyProcessSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let m = &spec.measure;
    let total = |x: f64| m.xi_plus(x) + m.xi_minus(x);
    if m.is_zero() {
        return Ok(0.0);
    }
    let head = quad::tanh_sinh(|x| x * x * total(x), 0.0, 1.0, cfg)?;
    let tail = quad::integrate_decay_tail(|x| x * x * total(x), 1.0, cfg).map_err(|e| match e {
        Error::SlowDecay { fitted } => Error::CaseMismatch(format!(
            "declared a finite second moment but x^2 nu decays with fitted exponent {fitted:.3} <= 1"
        )),
        other => other,
    })?;
    Ok(head.value + tail.value)
}

/// `b - integral_{|x| >= 1} x nu(dx)`, finite or `CaseMismatch`.
fn first_moment_coefficient(spec: &crate::LevyProcessSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let m = &spec.measure;
    let map_err = |e: Error| match e {
        Error::SlowDecay { fitted } => Error::CaseMismatch(format!(
            "declared a finite first tail moment but x nu decays with fitted exponent {fitted:.3} <= 1"
        )),
        other => other,
    };
    let plus = quad::integrate_decay_tail(|x| x * m.xi_plus(x), 1.0, cfg).map_err(map_err)?;
    let minus = quad::integrate_decay_tail(|x| x * m.xi_minus(x), 1.0, cfg).map_err(map_err)?;
    Ok(spec.b - (plus.value - minus.value))
}

// --- Empirical verification ---------------------------------------------------

/// What an empirical estimate should converge to.
#[derive(Debug, Clone)]
pub struct AsymptoticTarget {
    /// Power-law index of `h` plus one (the exponent index).
    pub index: f64,
    pub l: SlowlyVaryingFn,
    pub predicted_plus: f64,
    pub predicted_minus: f64,
    /// Symmetric-case magnitude used to judge vanishing coefficients.
    pub zero_scale: f64,
}

impl AsymptoticTarget {
    /// Origin behavior from large-lambda regular variation.
    pub fn origin_from_rv(rv: &RegularVariationSpec) -> Result<Self> {
        if rv.l.location != SvLocation::AtInfinity {
            return Err(Error::Domain(
                "origin asymptotics need the exponents' L at infinity".into(),
            ));
        }
        let (plus, minus) = coeff_c_pm(rv)?;
        Ok(AsymptoticTarget {
            index: rv.index,
            l: rv.l.clone(),
            predicted_plus: plus,
            predicted_minus: minus,
            zero_scale: symmetric_scale(rv)?,
        })
    }

    /// Behavior of `h` at infinity from small-lambda regular variation.
    pub fn infinity_from_rv(rv0: &RegularVariationSpec) -> Result<Self> {
        if rv0.l.location != SvLocation::AtZero {
            return Err(Error::Domain(
                "infinity asymptotics need the exponents' L at zero".into(),
            ));
        }
        let (plus, minus) = coeff_c_pm_zero(rv0)?;
        Ok(AsymptoticTarget {
            index: rv0.index,
            l: rv0.l.clone(),
            predicted_plus: plus,
            predicted_minus: minus,
            zero_scale: symmetric_scale(rv0)?,
        })
    }

    /// Origin behavior `h(x) ~ c_pm |x|` for a positive Gaussian part.
    pub fn gaussian(ev: &ExponentEvaluator, cfg: &QuadratureConfig) -> Result<Self> {
        let (plus, minus) = gaussian_coeff_c_pm(ev, cfg)?;
        Ok(AsymptoticTarget {
            index: 2.0,
            l: SlowlyVaryingFn::constant(1.0, SvLocation::AtInfinity),
            predicted_plus: plus,
            predicted_minus: minus,
            zero_scale: 1.0 / (2.0 * ev.gaussian_coeff()),
        })
    }

    pub fn predicted(&self, side: Side) -> f64 {
        match side {
            Side::Plus => self.predicted_plus,
            Side::Minus => self.predicted_minus,
        }
    }
}

/// One evaluation point of an asymptotic table.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AsymptoticPoint {
    pub x: f64,
    pub h_value: f64,
    /// Normalized estimate `c(x) = h(x) L(1/|x|) / |x|^{index-1}` (or the
    /// plain ratio for ratio reports).
    pub normalized_estimate: f64,
    pub error_estimate: f64,
}

/// Table of normalized estimates along a grid, with the convergence verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AsymptoticReport {
    pub side: Side,
    pub points: Vec<AsymptoticPoint>,
    pub predicted: f64,
    pub converged: bool,
    pub rel_deviation_at_finest: f64,
}

/// Tolerance band of the convergence verdict at the finest grid point.
pub const DEFAULT_TOL_BAND: f64 = 0.05;

/// Evaluate `c(x) = h(x) L(1/|x|) / |x|^{index-1}` along a grid of |x|
/// values and compare with the predicted coefficient.
///
/// The grid runs toward the asymptotic point: toward 0 when the target's L
/// lives at infinity, toward infinity otherwise. A vanishing prediction is
/// verified as decay of the estimate below `2 * tol_band * zero_scale`.
pub fn empirical_coefficient_estimate(
    ev: &ExponentEvaluator,
    target: &AsymptoticTarget,
    side: Side,
    grid_abs: &[f64],
    cfg: &QuadratureConfig,
    tol_band: f64,
) -> Result<AsymptoticReport> {
    if grid_abs.is_empty() {
        return Err(Error::Domain("empty evaluation grid".into()));
    }
    let mut xs: Vec<f64> = grid_abs.iter().map(|x| x.abs()).collect();
    match target.l.location {
        SvLocation::AtInfinity => xs.sort_by(|a, b| b.partial_cmp(a).unwrap()),
        SvLocation::AtZero => xs.sort_by(|a, b| a.partial_cmp(b).unwrap()),
    }

    let rows = crate::grid::map_points(&xs, |&ax| -> Result<AsymptoticPoint> {
        let x = side.signum() * ax;
        let h = resolvent::eval_h(ev, x, cfg)?;
        let weight = target.l.eval(1.0 / ax) / ax.powf(target.index - 1.0);
        Ok(AsymptoticPoint {
            x,
            h_value: h.value,
            normalized_estimate: h.value * weight,
            error_estimate: h.error_estimate * weight,
        })
    });
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        points.push(row?);
    }

    let predicted = target.predicted(side);
    let finest = points.last().expect("nonempty grid");
    let deviation = (finest.normalized_estimate - predicted).abs();
    let converged = if predicted == 0.0 {
        finest.normalized_estimate.abs() <= 2.0 * tol_band * target.zero_scale
    } else {
        deviation <= tol_band * predicted.abs().max(target.zero_scale)
    };
    Ok(AsymptoticReport {
        side,
        points,
        predicted,
        converged,
        rel_deviation_at_finest: deviation / predicted.abs().max(target.zero_scale),
    })
}

/// Tabulate `h_q(x) / h(x)` toward the origin; the ratio tends to 1 on any
/// side whose coefficient does not vanish. `NotApplicable` otherwise.
pub fn ratio_hq_h(
    ev: &ExponentEvaluator,
    target: &AsymptoticTarget,
    q: f64,
    side: Side,
    grid_abs: &[f64],
    cfg: &QuadratureConfig,
    tol_band: f64,
) -> Result<AsymptoticReport> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("ratio report needs q > 0, got {q}")));
    }
    let predicted = target.predicted(side);
    if predicted.abs() <= 1e-3 * target.zero_scale {
        return Err(Error::NotApplicable(format!(
            "the {side:?} coefficient vanishes; the ratio law says nothing there"
        )));
    }
    let mut xs: Vec<f64> = grid_abs.iter().map(|x| x.abs()).collect();
    xs.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let rows = crate::grid::map_points(&xs, |&ax| -> Result<AsymptoticPoint> {
        let x = side.signum() * ax;
        let h = resolvent::eval_h(ev, x, cfg)?;
        let hq = resolvent::eval_h_q(ev, q, x, cfg)?;
        if h.value <= h.error_estimate {
            return Err(Error::QuadratureFailure(format!(
                "h({x:e}) = {:e} is below its error estimate; the ratio is unusable",
                h.value
            )));
        }
        let ratio = hq.value / h.value;
        let err = (hq.error_estimate + ratio * h.error_estimate) / h.value;
        Ok(AsymptoticPoint {
            x,
            h_value: h.value,
            normalized_estimate: ratio,
            error_estimate: err,
        })
    });
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        points.push(row?);
    }
    let finest = points.last().expect("nonempty grid");
    let deviation = (finest.normalized_estimate - 1.0).abs();
    Ok(AsymptoticReport {
        side,
        points,
        predicted: 1.0,
        converged: deviation <= tol_band,
        rel_deviation_at_finest: deviation,
    })
}

#[cfg(test)]
mod tests;
