//! Tanh-sinh (double-exponential) quadrature for integrands with an
//! endpoint singularity at the left end of (0, B].
//!
//! The substitution x = B * (1 + tanh((pi/2) sinh t)) / 2 clusters abscissae
//! double-exponentially at both endpoints, so any integrable power behavior
//! x^sigma (sigma > -1) at the origin is resolved without knowing sigma.
//! Abscissae are produced as exact distances from the endpoints, never as
//! `endpoint + small`, which matters once the distance drops below 1e-30.

use super::{IntegralResult, QuadratureConfig};
use crate::{Error, Result};

/// Cap on |t|. Beyond this the abscissa distance underflows the range where
/// jump densities can be evaluated without overflow; the mass of (0, x_min)
/// is restored analytically from the fitted origin exponent.
const T_MAX: f64 = 5.0;
const MAX_LEVEL: usize = 10;

struct Node {
    /// Distance from the nearer endpoint, in units of (b - a).
    dist: f64,
    /// true: measured from the left endpoint, false: from the right.
    from_left: bool,
    weight: f64,
}

fn nodes_at_level(level: usize) -> Vec<Node> {
    let h = 1.0 / (1u64 << level) as f64;
    let mut out = Vec::new();
    // At level 0 take all multiples of h; at deeper levels only the odd ones
    // (the even ones were already used by coarser levels).
    let mut j = if level == 0 { 0 } else { 1 };
    let step = if level == 0 { 1 } else { 2 };
    loop {
        let t = j as f64 * h;
        if t > T_MAX {
            break;
        }
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // 1 - tanh(u) = 2 / (e^{2u} + 1), computed without cancellation.
        let dist = 1.0 / ((2.0 * u).exp() + 1.0);
        let sech = 1.0 / u.cosh();
        let weight = h * std::f64::consts::FRAC_PI_2 * t.cosh() * sech * sech / 2.0;
        if weight.is_finite() && weight > 0.0 && dist > 0.0 {
            if j == 0 {
                out.push(Node {
                    dist: 0.5,
                    from_left: true,
                    weight,
                });
            } else {
                out.push(Node {
                    dist,
                    from_left: true,
                    weight,
                });
                out.push(Node {
                    dist,
                    from_left: false,
                    weight,
                });
            }
        }
        j += step;
    }
    out
}

/// Integrate `f` over (a, b) where `f` may blow up (integrably) at either
/// endpoint. `f` receives the abscissa and is never called at a or b.
pub fn tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if a == b {
        return Ok(IntegralResult::exact(0.0));
    }
    let span = b - a;
    let eval = |node: &Node| -> f64 {
        let x = if node.from_left {
            a + span * node.dist
        } else {
            b - span * node.dist
        };
        let v = f(x);
        if v.is_finite() {
            v * node.weight
        } else {
            0.0
        }
    };

    let mut sum = 0.0;
    let mut prev = f64::NAN;
    let mut prev2 = f64::NAN;
    let mut nodes_used = 0usize;
    for level in 0..=MAX_LEVEL {
        let h_scale = if level == 0 { 1.0 } else { 0.5 };
        // Halving h halves the weights of all previously accumulated nodes.
        sum *= h_scale;
        let batch = nodes_at_level(level);
        nodes_used += batch.len();
        let add: f64 = batch.iter().map(&eval).sum();
        sum += add;
        let value = sum * span;

        if level >= 2 {
            // Standard double-exponential error model: the level-to-level
            // difference decays roughly quadratically in the exponent.
            let d1 = (value - prev).abs();
            let d2 = (prev - prev2).abs();
            let err = if d1 == 0.0 {
                f64::EPSILON * value.abs()
            } else if d2 > d1 && d2 > 0.0 {
                (d1 * (d1 / d2)).max(f64::EPSILON * value.abs())
            } else {
                d1
            };
            if err <= cfg.target(value) {
                return Ok(IntegralResult {
                    value,
                    error_estimate: err.max(f64::EPSILON * value.abs()),
                    segments_used: nodes_used,
                    truncation_point: b.abs(),
                    converged: true,
                });
            }
        }
        prev2 = prev;
        prev = value;
    }

    let value = sum * span;
    let err = (value - prev2).abs();
    if err <= 100.0 * cfg.target(value) {
        return Ok(IntegralResult {
            value,
            error_estimate: err,
            segments_used: nodes_used,
            truncation_point: b.abs(),
            converged: false,
        });
    }
    Err(Error::QuadratureFailure(format!(
        "tanh-sinh did not converge on ({a:e}, {b:e}): last correction {err:e}"
    )))
}

/// Integrate `f` over (0, B] where `f(x) ~ c * x^origin_order` as x -> 0+.
///
/// `origin_order <= -1` is rejected as non-integrable. The declared order is
/// also used to restore the sliver (0, x_min) that the depth-capped
/// double-exponential grid cannot reach.
pub fn integrate_singular<F: Fn(f64) -> f64>(
    f: F,
    origin_order: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if origin_order <= -1.0 {
        return Err(Error::NonIntegrableMeasure(format!(
            "origin exponent {origin_order} <= -1: integral over (0, {b}) diverges"
        )));
    }
    if !(b > 0.0) {
        return Err(Error::Domain(format!("upper limit must be positive, got {b}")));
    }
    let mut result = tanh_sinh(&f, 0.0, b, cfg)?;

    // Mass of the unreachable sliver (0, x_min), estimated from the declared
    // power behavior: integral of c x^s over (0, d) = f(d) * d / (s + 1).
    let u = std::f64::consts::FRAC_PI_2 * T_MAX.sinh();
    let x_min = b / ((2.0 * u).exp() + 1.0);
    let f_at = f(x_min);
    if f_at.is_finite() {
        let sliver = f_at * x_min / (origin_order + 1.0);
        result.value += sliver;
        result.error_estimate += sliver.abs();
    }
    Ok(result)
}

/// Integrate over (a, b] where only a left endpoint at 0 can be singular
/// (with behavior `x^origin_order`); for a > 0 this is plain tanh-sinh.
pub fn tanh_sinh_from<F: Fn(f64) -> f64>(
    f: F,
    origin_order: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if a == 0.0 {
        integrate_singular(f, origin_order, b, cfg)
    } else {
        tanh_sinh(f, a, b, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // integral of x^{-1/2} over (0, 1] = 2
        let r = integrate_singular(|x: f64| x.powf(-0.5), -0.5, 1.0, &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn damped_cosine_kernel() {
        // integral of (1 - cos x) e^{-x} over (0, inf) = 1/2; (0, 50] captures
        // it to ~1e-21.
        let r = integrate_singular(
            |x: f64| crate::kernels::one_minus_cos(x) * (-x).exp(),
            2.0,
            50.0,
            &cfg(),
        )
        .unwrap();
        assert!((r.value - 0.5).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn algebraic_kernel_with_known_antiderivative() {
        // integral of sqrt(x) / (1+x)^2 over (0, 1] = pi/4 - 1/2
        let expect = std::f64::consts::FRAC_PI_4 - 0.5;
        let r = integrate_singular(|x: f64| x.sqrt() / ((1.0 + x) * (1.0 + x)), 0.5, 1.0, &cfg())
            .unwrap();
        assert!((r.value - expect).abs() < 1e-12, "{} vs {expect}", r.value);
    }

    #[test]
    fn strong_singularity_near_minus_one() {
        // integral of x^{-0.9} over (0, 1] = 10
        let r = integrate_singular(|x: f64| x.powf(-0.9), -0.9, 1.0, &cfg()).unwrap();
        assert!((r.value - 10.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn rejects_non_integrable_order() {
        assert!(matches!(
            integrate_singular(|x: f64| x.powf(-1.2), -1.2, 1.0, &cfg()),
            Err(Error::NonIntegrableMeasure(_))
        ));
    }

    #[test]
    fn smooth_integrand_is_cheap_and_exact() {
        let r = tanh_sinh(|x: f64| x * x, 0.0, 3.0, &cfg()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-12);
    }

    #[test]
    fn error_estimate_honest_on_singular_family() {
        for &s in &[-0.9, -0.5, -0.1, 0.3] {
            let exact = 1.0 / (s + 1.0);
            let r = integrate_singular(|x: f64| x.powf(s), s, 1.0, &cfg()).unwrap();
            assert!(
                (r.value - exact).abs() <= 2.0 * r.error_estimate.max(1e-14),
                "s={s}: err {} vs estimate {}",
                (r.value - exact).abs(),
                r.error_estimate
            );
        }
    }
}
