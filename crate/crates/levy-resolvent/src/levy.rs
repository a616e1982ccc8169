//! Process specifications: the characteristic triplet `(a, b, nu)` with the
//! jump measure given through its density on each half-line.

use crate::quad::{self, QuadratureConfig};
use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One multiplicative term of a custom jump density:
/// `coeff * x^power * (1+x)^onePlusXPower * exp(-x/expScale) * 1{x >= minX}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DensityTerm {
    pub coeff: f64,
    pub power: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub one_plus_x_power: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_x: Option<f64>,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl DensityTerm {
    pub fn power_law(coeff: f64, power: f64) -> Self {
        DensityTerm {
            coeff,
            power,
            one_plus_x_power: 0.0,
            exp_scale: None,
            min_x: None,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if let Some(c) = self.min_x {
            if x < c {
                return 0.0;
            }
        }
        let mut v = self.coeff * x.powf(self.power);
        if self.one_plus_x_power != 0.0 {
            v *= (1.0 + x).powf(self.one_plus_x_power);
        }
        if let Some(s) = self.exp_scale {
            v *= (-x / s).exp();
        }
        v
    }

    fn validate(&self) -> Result<()> {
        if !(self.coeff >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "custom density term has negative coefficient {}",
                self.coeff
            )));
        }
        if let Some(s) = self.exp_scale {
            if !(s > 0.0) {
                return Err(Error::InvalidSpec(format!("expScale must be positive, got {s}")));
            }
        }
        if let Some(c) = self.min_x {
            if !(c >= 0.0) {
                return Err(Error::InvalidSpec(format!("minX must be nonnegative, got {c}")));
            }
        }
        Ok(())
    }
}

fn eval_terms(terms: &[DensityTerm], x: f64) -> f64 {
    terms.iter().map(|t| t.eval(x)).sum()
}

/// Declared power behavior `xi_pm(x) ~ kPm * x^{-alpha-1}` as x -> 0+.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OriginHint {
    pub alpha: f64,
    pub k_plus: f64,
    pub k_minus: f64,
}

/// Declared tail behavior `xi_pm(x) ~ kPm * x^{-betaTail-1}` as x -> infinity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TailHint {
    pub beta_tail: f64,
    pub k_plus: f64,
    pub k_minus: f64,
}

/// The jump measure, as a density on each side of the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    /// No jumps.
    Zero,
    /// `K_pm |x|^{-alpha-1}` on each half-line, alpha in (1, 2).
    Stable { k_plus: f64, k_minus: f64, alpha: f64 },
    /// `K_pm x^{-alpha-1} (1+x)^{alpha-betaTail}`: stable-like at the origin,
    /// index betaTail in the tail.
    Tempered {
        k_plus: f64,
        k_minus: f64,
        alpha: f64,
        beta_tail: f64,
    },
    /// One-sided `e^{-x/scale}` on (0, infinity): finite activity, all
    /// moments finite.
    Exponential { scale: f64 },
    /// Term-based densities on each side, with optional asymptotic hints.
    Custom {
        xi_plus: Vec<DensityTerm>,
        xi_minus: Vec<DensityTerm>,
        origin_hint: Option<OriginHint>,
        tail_hint: Option<TailHint>,
    },
}

impl MeasureSpec {
    /// Density of the measure at `+x` for `x > 0`.
    pub fn xi_plus(&self, x: f64) -> f64 {
        match self {
            MeasureSpec::Zero => 0.0,
            MeasureSpec::Stable { k_plus, alpha, .. } => k_plus * x.powf(-alpha - 1.0),
            MeasureSpec::Tempered {
                k_plus,
                alpha,
                beta_tail,
                ..
            } => k_plus * x.powf(-alpha - 1.0) * (1.0 + x).powf(alpha - beta_tail),
            MeasureSpec::Exponential { scale } => (-x / scale).exp(),
            MeasureSpec::Custom { xi_plus, .. } => eval_terms(xi_plus, x),
        }
    }

    /// Density of the measure at `-x` for `x > 0`.
    pub fn xi_minus(&self, x: f64) -> f64 {
        match self {
            MeasureSpec::Zero | MeasureSpec::Exponential { .. } => 0.0,
            MeasureSpec::Stable { k_minus, alpha, .. } => k_minus * x.powf(-alpha - 1.0),
            MeasureSpec::Tempered {
                k_minus,
                alpha,
                beta_tail,
                ..
            } => k_minus * x.powf(-alpha - 1.0) * (1.0 + x).powf(alpha - beta_tail),
            MeasureSpec::Custom { xi_minus, .. } => eval_terms(xi_minus, x),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MeasureSpec::Zero => true,
            MeasureSpec::Stable { k_plus, k_minus, .. }
            | MeasureSpec::Tempered { k_plus, k_minus, .. } => *k_plus == 0.0 && *k_minus == 0.0,
            MeasureSpec::Exponential { .. } => false,
            MeasureSpec::Custom { xi_plus, xi_minus, .. } => {
                xi_plus.iter().all(|t| t.coeff == 0.0) && xi_minus.iter().all(|t| t.coeff == 0.0)
            }
        }
    }

    /// Infimum of the support of the side density (0 unless every
    /// contributing term carries a cutoff).
    pub fn support_start_plus(&self) -> f64 {
        match self {
            MeasureSpec::Custom { xi_plus, .. } => support_start(xi_plus),
            _ => 0.0,
        }
    }

    pub fn support_start_minus(&self) -> f64 {
        match self {
            MeasureSpec::Custom { xi_minus, .. } => support_start(xi_minus),
            _ => 0.0,
        }
    }

    /// Whether the two half-line densities coincide identically.
    pub fn is_symmetric(&self) -> bool {
        match self {
            MeasureSpec::Zero => true,
            MeasureSpec::Stable { k_plus, k_minus, .. }
            | MeasureSpec::Tempered { k_plus, k_minus, .. } => k_plus == k_minus,
            MeasureSpec::Exponential { .. } => false,
            MeasureSpec::Custom { xi_plus, xi_minus, .. } => xi_plus == xi_minus,
        }
    }

    /// Power behavior at the origin, declared or analytic.
    pub fn origin_hint(&self) -> Option<OriginHint> {
        match self {
            MeasureSpec::Stable { k_plus, k_minus, alpha } => Some(OriginHint {
                alpha: *alpha,
                k_plus: *k_plus,
                k_minus: *k_minus,
            }),
            MeasureSpec::Tempered {
                k_plus,
                k_minus,
                alpha,
                ..
            } => Some(OriginHint {
                alpha: *alpha,
                k_plus: *k_plus,
                k_minus: *k_minus,
            }),
            MeasureSpec::Custom { origin_hint, .. } => *origin_hint,
            _ => None,
        }
    }

    /// Power behavior in the tail, declared or analytic. `None` means the
    /// tail decays faster than any power (or there are no jumps).
    pub fn tail_hint(&self) -> Option<TailHint> {
        match self {
            MeasureSpec::Stable { k_plus, k_minus, alpha } => Some(TailHint {
                beta_tail: *alpha,
                k_plus: *k_plus,
                k_minus: *k_minus,
            }),
            MeasureSpec::Tempered {
                k_plus,
                k_minus,
                beta_tail,
                ..
            } => Some(TailHint {
                beta_tail: *beta_tail,
                k_plus: *k_plus,
                k_minus: *k_minus,
            }),
            MeasureSpec::Custom { tail_hint, .. } => *tail_hint,
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Zero => Ok(()),
            MeasureSpec::Stable { k_plus, k_minus, alpha } => {
                if !(*k_plus >= 0.0 && *k_minus >= 0.0) {
                    return Err(Error::InvalidSpec("stable intensities must be nonnegative".into()));
                }
                if *k_plus + *k_minus <= 0.0 {
                    return Err(Error::InvalidSpec(
                        "stable density needs kPlus + kMinus > 0".into(),
                    ));
                }
                check_alpha(*alpha)
            }
            MeasureSpec::Tempered {
                k_plus,
                k_minus,
                alpha,
                beta_tail,
            } => {
                if !(*k_plus > 0.0 && *k_minus > 0.0) {
                    return Err(Error::InvalidSpec(
                        "tempered density needs positive kPlus and kMinus".into(),
                    ));
                }
                check_alpha(*alpha)?;
                if !(*beta_tail > 0.0 && *beta_tail < 2.0) {
                    return Err(Error::InvalidSpec(format!(
                        "betaTail must lie in (0, 2), got {beta_tail}"
                    )));
                }
                Ok(())
            }
            MeasureSpec::Exponential { scale } => {
                if !(*scale > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "exponential scale must be positive, got {scale}"
                    )));
                }
                Ok(())
            }
            MeasureSpec::Custom { xi_plus, xi_minus, .. } => {
                for t in xi_plus.iter().chain(xi_minus) {
                    t.validate()?;
                }
                Ok(())
            }
        }
    }
}

fn support_start(terms: &[DensityTerm]) -> f64 {
    terms
        .iter()
        .filter(|t| t.coeff > 0.0)
        .map(|t| t.min_x.unwrap_or(0.0))
        .fold(f64::INFINITY, f64::min)
        .min(f64::MAX)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidSpec(format!("alpha must lie in (1, 2), got {alpha}")));
    }
    Ok(())
}

/// Characteristic triplet of a one-dimensional Levy process.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LevyProcessSpec {
    /// Gaussian coefficient, a >= 0.
    pub a: f64,
    /// Drift constant multiplying `i lambda` in the exponent.
    pub b: f64,
    pub measure: MeasureSpec,
}

impl LevyProcessSpec {
    pub fn new(a: f64, b: f64, measure: MeasureSpec) -> Result<Self> {
        let spec = LevyProcessSpec { a, b, measure };
        spec.validate()?;
        Ok(spec)
    }

    pub fn brownian(a: f64, b: f64) -> Self {
        LevyProcessSpec {
            a,
            b,
            measure: MeasureSpec::Zero,
        }
    }

    /// The strictly stable process with density `K_pm |x|^{-alpha-1}`.
    ///
    /// The drift is set to `(K_plus - K_minus)/(alpha - 1)`, which cancels the
    /// linear term produced by the compensator cutoff at |x| = 1 and makes
    /// both exponents exact power laws `c lambda^alpha`.
    pub fn strictly_stable(k_plus: f64, k_minus: f64, alpha: f64) -> Result<Self> {
        let b = (k_plus - k_minus) / (alpha - 1.0);
        LevyProcessSpec::new(
            0.0,
            b,
            MeasureSpec::Stable {
                k_plus,
                k_minus,
                alpha,
            },
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "Gaussian coefficient must be nonnegative, got {}",
                self.a
            )));
        }
        if !self.b.is_finite() || !self.a.is_finite() {
            return Err(Error::InvalidSpec("a and b must be finite".into()));
        }
        self.measure.validate()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: LevyProcessSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }
}

// --- JSON encoding of the measure -------------------------------------------
//
// The wire format is internally tagged ({"kind": "stable", ...}) and unknown
// fields must be rejected, which serde's derived internally-tagged enums do
// not enforce. Each kind therefore round-trips through an explicit helper
// struct with deny_unknown_fields.

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct StableWire {
    kind: String,
    k_plus: f64,
    k_minus: f64,
    alpha: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct TemperedWire {
    kind: String,
    k_plus: f64,
    k_minus: f64,
    alpha: f64,
    beta_tail: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ExponentialWire {
    kind: String,
    scale: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ZeroWire {
    kind: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CustomWire {
    kind: String,
    xi_plus: Vec<DensityTerm>,
    xi_minus: Vec<DensityTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin_hint: Option<OriginHint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail_hint: Option<TailHint>,
}

impl Serialize for MeasureSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MeasureSpec::Zero => ZeroWire {
                kind: "zero".into(),
            }
            .serialize(s),
            MeasureSpec::Stable { k_plus, k_minus, alpha } => StableWire {
                kind: "stable".into(),
                k_plus: *k_plus,
                k_minus: *k_minus,
                alpha: *alpha,
            }
            .serialize(s),
            MeasureSpec::Tempered {
                k_plus,
                k_minus,
                alpha,
                beta_tail,
            } => TemperedWire {
                kind: "tempered".into(),
                k_plus: *k_plus,
                k_minus: *k_minus,
                alpha: *alpha,
                beta_tail: *beta_tail,
            }
            .serialize(s),
            MeasureSpec::Exponential { scale } => ExponentialWire {
                kind: "exponential".into(),
                scale: *scale,
            }
            .serialize(s),
            MeasureSpec::Custom {
                xi_plus,
                xi_minus,
                origin_hint,
                tail_hint,
            } => CustomWire {
                kind: "custom".into(),
                xi_plus: xi_plus.clone(),
                xi_minus: xi_minus.clone(),
                origin_hint: *origin_hint,
                tail_hint: *tail_hint,
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for MeasureSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| D::Error::custom("measure needs a string field `kind`"))?
            .to_owned();
        let fail = D::Error::custom;
        match kind.as_str() {
            "zero" => {
                let _: ZeroWire = serde_json::from_value(value).map_err(fail)?;
                Ok(MeasureSpec::Zero)
            }
            "stable" => {
                let w: StableWire = serde_json::from_value(value).map_err(fail)?;
                Ok(MeasureSpec::Stable {
                    k_plus: w.k_plus,
                    k_minus: w.k_minus,
                    alpha: w.alpha,
                })
            }
            "tempered" => {
                let w: TemperedWire = serde_json::from_value(value).map_err(fail)?;
                Ok(MeasureSpec::Tempered {
                    k_plus: w.k_plus,
                    k_minus: w.k_minus,
                    alpha: w.alpha,
                    beta_tail: w.beta_tail,
                })
            }
            "exponential" => {
                let w: ExponentialWire = serde_json::from_value(value).map_err(fail)?;
                Ok(MeasureSpec::Exponential { scale: w.scale })
            }
            "custom" => {
                let w: CustomWire = serde_json::from_value(value).map_err(fail)?;
                Ok(MeasureSpec::Custom {
                    xi_plus: w.xi_plus,
                    xi_minus: w.xi_minus,
                    origin_hint: w.origin_hint,
                    tail_hint: w.tail_hint,
                })
            }
            other => Err(D::Error::custom(format!(
                "unknown measure kind `{other}`, expected one of stable, tempered, exponential, zero, custom"
            ))),
        }
    }
}

// --- Numeric validation ------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    fn push(&mut self, name: &str, passed: bool, evidence: String) {
        self.checks.push(ValidationCheck {
            name: name.into(),
            passed,
            evidence,
        });
        self.passed &= passed;
    }
}

/// Numeric admissibility report: structural invariants, density
/// nonnegativity on a sample grid, fitted local exponents of the density at
/// both frontiers, and the integrability of `x^2 ^ 1` against the measure.
pub fn validate_spec(spec: &LevyProcessSpec, cfg: &QuadratureConfig) -> ValidationReport {
    let mut report = ValidationReport {
        passed: true,
        checks: Vec::new(),
    };

    match spec.validate() {
        Ok(()) => report.push("structure", true, "triplet fields within range".into()),
        Err(e) => {
            report.push("structure", false, e.to_string());
            return report;
        }
    }

    if spec.measure.is_zero() {
        report.push("jump-density", true, "no jumps; nothing further to check".into());
        return report;
    }

    let total = |x: f64| spec.measure.xi_plus(x) + spec.measure.xi_minus(x);

    // Nonnegativity on a log grid spanning both frontiers.
    let mut neg_at = None;
    for i in 0..=120 {
        let x = 10f64.powf(-8.0 + i as f64 * 0.1);
        if spec.measure.xi_plus(x) < 0.0 || spec.measure.xi_minus(x) < 0.0 {
            neg_at = Some(x);
            break;
        }
    }
    match neg_at {
        None => report.push("nonnegative", true, "density nonnegative on sample grid".into()),
        Some(x) => report.push("nonnegative", false, format!("density negative near x = {x:e}")),
    }

    // Local exponent at the origin: integral of x^2 * xi near 0 requires an
    // exponent above -3.
    let origin_fit = quad::fit_power_exponent(total, 1e-6, 1e-3);
    match origin_fit {
        Some(fit) => {
            let ok = fit.exponent > -3.0;
            report.push(
                "origin-integrability",
                ok,
                format!("fitted origin exponent {:.4}", fit.exponent),
            );
        }
        None => report.push(
            "origin-integrability",
            true,
            "density vanishes near the origin".into(),
        ),
    }

    // Tail: the measure of |x| >= 1 must be finite, so the density must decay
    // faster than 1/x.
    let tail_fit = quad::fit_power_exponent(total, 1e2, 1e4);
    match tail_fit {
        Some(fit) => {
            let ok = fit.exponent < -1.0;
            report.push(
                "tail-integrability",
                ok,
                format!("fitted tail exponent {:.4}", fit.exponent),
            );
        }
        None => report.push(
            "tail-integrability",
            true,
            "density vanishes beyond the sample window".into(),
        ),
    }

    // Numeric witness of integral (x^2 ^ 1) nu(dx) < infinity.
    let origin_order = origin_fit.map(|f| f.exponent + 2.0).unwrap_or(0.0);
    let inner = quad::integrate_singular(|x| x * x * total(x), origin_order, 1.0, cfg);
    let outer = quad::integrate_decay_tail(total, 1.0, cfg);
    match (inner, outer) {
        (Ok(i), Ok(o)) => report.push(
            "levy-integral",
            true,
            format!("integral (x^2 ^ 1) nu(dx) = {:.6e}", i.value + o.value),
        ),
        (i, o) => {
            let msg = [i.err(), o.err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            report.push("levy-integral", false, msg);
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn json_round_trip_all_kinds() {
        let specs = vec![
            LevyProcessSpec::brownian(0.5, 1.0),
            LevyProcessSpec::strictly_stable(1.0, 2.0, 1.5).unwrap(),
            LevyProcessSpec::new(
                0.0,
                0.0,
                MeasureSpec::Tempered {
                    k_plus: 2.0,
                    k_minus: 1.0,
                    alpha: 1.5,
                    beta_tail: 1.0,
                },
            )
            .unwrap(),
            LevyProcessSpec::new(0.0, 0.0, MeasureSpec::Exponential { scale: 1.0 }).unwrap(),
            LevyProcessSpec::new(
                0.0,
                0.0,
                MeasureSpec::Custom {
                    xi_plus: vec![DensityTerm {
                        coeff: 1.0,
                        power: -1.5,
                        one_plus_x_power: 0.0,
                        exp_scale: None,
                        min_x: Some(1.0),
                    }],
                    xi_minus: vec![],
                    origin_hint: None,
                    tail_hint: Some(TailHint {
                        beta_tail: 0.5,
                        k_plus: 1.0,
                        k_minus: 0.0,
                    }),
                },
            )
            .unwrap(),
        ];
        for spec in specs {
            let text = spec.to_json();
            let back = LevyProcessSpec::from_json(&text).unwrap();
            assert_eq!(spec, back, "{text}");
        }
    }

    #[test]
    fn json_field_names_are_normative() {
        let text = r#"{ "a": 0.0, "b": -2.0,
            "measure": { "kind": "stable", "kPlus": 1.0, "kMinus": 2.0, "alpha": 1.5 } }"#;
        let spec = LevyProcessSpec::from_json(text).unwrap();
        assert_eq!(
            spec.measure,
            MeasureSpec::Stable {
                k_plus: 1.0,
                k_minus: 2.0,
                alpha: 1.5
            }
        );
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{ "a": 0.0, "b": 0.0,
            "measure": { "kind": "stable", "kPlus": 1.0, "kMinus": 2.0, "alpha": 1.5, "beta": 7 } }"#;
        let err = LevyProcessSpec::from_json(text).unwrap_err();
        assert!(err.to_string().contains("beta"), "{err}");

        let text = r#"{ "a": 0.0, "b": 0.0, "speed": 3,
            "measure": { "kind": "zero" } }"#;
        assert!(LevyProcessSpec::from_json(text).is_err());

        let text = r#"{ "a": 0.0, "b": 0.0, "measure": { "kind": "cauchy" } }"#;
        let err = LevyProcessSpec::from_json(text).unwrap_err();
        assert!(err.to_string().contains("cauchy"), "{err}");
    }

    #[test]
    fn structural_validation() {
        assert!(LevyProcessSpec::new(-0.1, 0.0, MeasureSpec::Zero).is_err());
        assert!(LevyProcessSpec::new(
            0.0,
            0.0,
            MeasureSpec::Stable {
                k_plus: 0.0,
                k_minus: 0.0,
                alpha: 1.5
            }
        )
        .is_err());
        assert!(LevyProcessSpec::new(
            0.0,
            0.0,
            MeasureSpec::Stable {
                k_plus: 1.0,
                k_minus: 0.0,
                alpha: 2.1
            }
        )
        .is_err());
    }

    #[test]
    fn validate_spec_stable_passes_with_expected_exponent() {
        let spec = LevyProcessSpec::strictly_stable(1.0, 1.0, 1.5).unwrap();
        let report = validate_spec(&spec, &cfg());
        assert!(report.passed, "{report:?}");
        let origin = report
            .checks
            .iter()
            .find(|c| c.name == "origin-integrability")
            .unwrap();
        assert!(origin.evidence.contains("-2.5"), "{}", origin.evidence);
    }

    #[test]
    fn validate_spec_rejects_heavy_origin() {
        // xi(x) = x^{-3.2} near 0 makes integral x^2 xi diverge.
        let spec = LevyProcessSpec {
            a: 0.0,
            b: 0.0,
            measure: MeasureSpec::Custom {
                xi_plus: vec![DensityTerm::power_law(1.0, -3.2)],
                xi_minus: vec![],
                origin_hint: None,
                tail_hint: None,
            },
        };
        let report = validate_spec(&spec, &cfg());
        assert!(!report.passed);
        let origin = report
            .checks
            .iter()
            .find(|c| c.name == "origin-integrability")
            .unwrap();
        assert!(!origin.passed);
    }

    #[test]
    fn validate_spec_tempered_tail_exponent() {
        let spec = LevyProcessSpec::new(
            0.0,
            0.0,
            MeasureSpec::Tempered {
                k_plus: 1.0,
                k_minus: 1.0,
                alpha: 1.5,
                beta_tail: 1.0,
            },
        )
        .unwrap();
        let report = validate_spec(&spec, &cfg());
        assert!(report.passed, "{report:?}");
        let tail = report
            .checks
            .iter()
            .find(|c| c.name == "tail-integrability")
            .unwrap();
        // xi ~ x^{-beta-1} = x^{-2} at infinity
        assert!(tail.evidence.contains("-2.0"), "{}", tail.evidence);
    }
}
