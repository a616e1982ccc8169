//! Numeric probes of the three integrability assumptions.
//!
//! Each probe fits local power exponents of the relevant integrand at its
//! frontier (infinity for resolvent existence, zero for the representation
//! integral, both for the Gaussian-coefficient case) and reports pass /
//! fail / inconclusive together with the fitted exponents and the witness
//! integral `(lambda^2 ^ 1) / |Psi|`.

use super::*;
use crate::Assumption;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeVerdict {
    Pass,
    Fail,
    Inconclusive,
}

impl ProbeVerdict {
    fn and(self, other: ProbeVerdict) -> ProbeVerdict {
        use ProbeVerdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeFit {
    pub name: String,
    pub exponent: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeReport {
    pub assumption: Assumption,
    pub verdict: ProbeVerdict,
    pub fits: Vec<ProbeFit>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl ProbeReport {
    fn new(assumption: Assumption) -> Self {
        ProbeReport {
            assumption,
            verdict: ProbeVerdict::Pass,
            fits: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == ProbeVerdict::Pass
    }
}

fn psi_abs(ev: &ExponentEvaluator, l: f64) -> f64 {
    ev.psi_unchecked(l).map(|p| p.abs()).unwrap_or(f64::NAN)
}

fn im_lambda_over_psi(ev: &ExponentEvaluator, l: f64) -> f64 {
    ev.psi_unchecked(l)
        .map(|p| -l * p.omega.value / p.abs_sq())
        .unwrap_or(f64::NAN)
}

/// Classify a fitted decay exponent against a pass threshold (`want_above`:
/// pass when exponent > threshold, fail when clearly below).
fn classify(exponent: f64, threshold: f64, want_above: bool, residual: f64) -> ProbeVerdict {
    if residual > 1.0 {
        return ProbeVerdict::Inconclusive;
    }
    let margin = 0.02;
    let delta = if want_above {
        exponent - threshold
    } else {
        threshold - exponent
    };
    if delta > margin {
        ProbeVerdict::Pass
    } else if delta < -margin {
        ProbeVerdict::Fail
    } else {
        ProbeVerdict::Inconclusive
    }
}

/// Resolvent-existence probe: `1/|q + Psi|` must decay faster than
/// `1/lambda` at infinity.
pub fn check_a(ev: &ExponentEvaluator, q: f64, cfg: &QuadratureConfig) -> Result<ProbeReport> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("the probe needs q > 0, got {q}")));
    }
    let mut report = ProbeReport::new(Assumption::A);

    if ev.gaussian_coeff() > 0.0 {
        report
            .notes
            .push("positive Gaussian coefficient: satisfied automatically".into());
    }

    let g = |l: f64| {
        ev.psi_unchecked(l)
            .map(|p| {
                let re = q + p.theta.value;
                1.0 / (re * re + p.omega.value * p.omega.value).sqrt()
            })
            .unwrap_or(f64::NAN)
    };
    match quad::fit_power_exponent(g, 1e4, 1e5) {
        Some(fit) => {
            let decay = -fit.exponent;
            report.fits.push(ProbeFit {
                name: "decay of 1/|q+Psi| at infinity".into(),
                exponent: decay,
                residual: fit.residual_rms,
            });
            report.verdict = classify(decay, 1.0, true, fit.residual_rms);
        }
        None => {
            report.verdict = ProbeVerdict::Inconclusive;
            report.notes.push("integrand not fittable at the frontier".into());
        }
    }
    if ev.gaussian_coeff() > 0.0 {
        report.verdict = ProbeVerdict::Pass;
    }

    // Secondary witness: integral of (lambda^2 ^ 1)/|Psi|, finite whenever
    // the resolvent density exists.
    let witness_head = quad::tanh_sinh(|l| l * l / psi_abs(ev, l), 0.0, 1.0, cfg);
    let witness_tail = quad::integrate_decay_tail(|l| 1.0 / psi_abs(ev, l), 1.0, cfg);
    match (witness_head, witness_tail) {
        (Ok(h), Ok(t)) => report.witnesses.push(Witness {
            name: "integral (lambda^2 ^ 1)/|Psi|".into(),
            value: h.value + t.value,
        }),
        _ => {
            report.witnesses.push(Witness {
                name: "integral (lambda^2 ^ 1)/|Psi|".into(),
                value: f64::INFINITY,
            });
            report.notes.push("witness integral did not converge".into());
        }
    }
    Ok(report)
}

/// Representation-integral probe: on top of the resolvent-existence check,
/// `|Im(lambda/Psi)|` must be integrable near 0 (fitted exponent > -1).
pub fn check_t(ev: &ExponentEvaluator, cfg: &QuadratureConfig) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(Assumption::T);
    let a_report = check_a(ev, 1.0, cfg)?;
    report.fits.extend(a_report.fits.clone());
    report.witnesses.extend(a_report.witnesses.clone());
    let mut verdict = a_report.verdict;

    if ev.omega_is_zero() {
        report
            .notes
            .push("omega vanishes identically; the imaginary part contributes nothing".into());
    } else {
        match quad::fit_power_exponent(|l| im_lambda_over_psi(ev, l), 1e-6, 1e-4) {
            Some(fit) => {
                report.fits.push(ProbeFit {
                    name: "|Im(lambda/Psi)| near zero".into(),
                    exponent: fit.exponent,
                    residual: fit.residual_rms,
                });
                verdict = verdict.and(classify(fit.exponent, -1.0, true, fit.residual_rms));
            }
            None => {
                report
                    .notes
                    .push("imaginary part not fittable near zero".into());
            }
        }
        let head = quad::tanh_sinh(|l| im_lambda_over_psi(ev, l).abs(), 0.0, 1.0, cfg);
        match head {
            Ok(h) => report.witnesses.push(Witness {
                name: "integral over (0,1] of |Im(lambda/Psi)|".into(),
                value: h.value,
            }),
            Err(_) => report.notes.push("imaginary-part witness did not converge".into()),
        }
    }
    report.verdict = verdict;
    Ok(report)
}

/// Positive-Gaussian probe: `a > 0` and `|Im(lambda/Psi)|` integrable over
/// the whole half-line.
pub fn check_z(ev: &ExponentEvaluator, cfg: &QuadratureConfig) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(Assumption::Z);
    if !(ev.gaussian_coeff() > 0.0) {
        report.verdict = ProbeVerdict::Fail;
        report
            .notes
            .push("the Gaussian coefficient vanishes".into());
        return Ok(report);
    }

    let mut verdict = ProbeVerdict::Pass;
    if ev.omega_is_zero() {
        report
            .notes
            .push("omega vanishes identically; the imaginary part contributes nothing".into());
    } else {
        if let Some(fit) = quad::fit_power_exponent(|l| im_lambda_over_psi(ev, l), 1e-6, 1e-4) {
            report.fits.push(ProbeFit {
                name: "|Im(lambda/Psi)| near zero".into(),
                exponent: fit.exponent,
                residual: fit.residual_rms,
            });
            verdict = verdict.and(classify(fit.exponent, -1.0, true, fit.residual_rms));
        }
        if let Some(fit) = quad::fit_power_exponent(|l| im_lambda_over_psi(ev, l), 1e4, 1e6) {
            report.fits.push(ProbeFit {
                name: "|Im(lambda/Psi)| at infinity".into(),
                exponent: fit.exponent,
                residual: fit.residual_rms,
            });
            verdict = verdict.and(classify(fit.exponent, -1.0, false, fit.residual_rms));
        }
        let head = quad::tanh_sinh(|l| im_lambda_over_psi(ev, l).abs(), 0.0, 1.0, cfg);
        let tail = quad::integrate_decay_tail(|l| im_lambda_over_psi(ev, l).abs(), 1.0, cfg);
        match (head, tail) {
            (Ok(h), Ok(t)) => report.witnesses.push(Witness {
                name: "integral of |Im(lambda/Psi)|".into(),
                value: h.value + t.value,
            }),
            _ => {
                verdict = verdict.and(ProbeVerdict::Inconclusive);
                report
                    .notes
                    .push("global imaginary-part witness did not converge".into());
            }
        }
    }
    report.verdict = verdict;
    Ok(report)
}
