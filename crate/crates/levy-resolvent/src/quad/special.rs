//! Gamma function and the cosine/sine moment constants that every
//! asymptotic coefficient is built from.

use crate::{Error, Result};
use std::f64::consts::PI;

// Lanczos coefficients from Pugh's analysis (g = 10.900511, n = 11),
// accurate to ~16 significant digits over the positive axis.
const GAMMA_R: f64 = 10.900511;

const GAMMA_DK: &[f64] = &[
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657173362492472666631120594218414085755;

fn lanczos_sum(x: f64) -> f64 {
    GAMMA_DK
        .iter()
        .enumerate()
        .skip(1)
        .fold(GAMMA_DK[0], |s, (i, &dk)| s + dk / (x + i as f64 - 1.0))
}

/// Gamma function on (0, 170], to at least 13 significant digits.
///
/// Arguments below 0.5 go through the reflection formula; above ~100 the
/// power factor is assembled in log space to dodge intermediate overflow.
pub fn gamma_fn(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!(
            "gamma is only evaluated for positive arguments, got {alpha}"
        )));
    }
    if alpha > 170.0 {
        return Err(Error::Domain(format!(
            "gamma({alpha}) overflows the double range"
        )));
    }
    Ok(gamma_unchecked(alpha))
}

// Direct Lanczos evaluation amplifies the powf rounding by the exponent
// x - 0.5 and drifts past 1e-13 relative already near x = 40. Restricting it
// to the strip [1.5, 2.5) keeps the exponent in [1, 2]; the recurrence
// Gamma(x+1) = x Gamma(x) walks out of the strip at half an ulp per step.
fn gamma_unchecked(x: f64) -> f64 {
    let mut y = x;
    let mut up = 1.0f64;
    let mut down = 1.0f64;
    while y >= 2.5 {
        y -= 1.0;
        up *= y;
    }
    while y < 1.5 {
        down *= y;
        y += 1.0;
    }
    let s = lanczos_sum(y);
    let base = s * TWO_SQRT_E_OVER_PI * ((y - 0.5 + GAMMA_R) / std::f64::consts::E).powf(y - 0.5);
    base * up / down
}

/// The cosine-moment constant
/// `C_alpha = (1/pi) * integral of (1 - cos x) x^{-alpha} over (0, inf)
///          = 1 / (2 Gamma(alpha) sin(pi (alpha - 1) / 2))`,
/// finite exactly for alpha in (1, 3).
pub fn c_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 3.0) {
        return Err(Error::Domain(format!(
            "C_alpha requires alpha in (1, 3), got {alpha}"
        )));
    }
    let g = gamma_fn(alpha)?;
    let s = (PI * (alpha - 1.0) / 2.0).sin();
    Ok(1.0 / (2.0 * g * s))
}

/// `(1/pi) * integral of sin(x) x^{-alpha} over (0, inf)
///  = C_alpha tan(pi (alpha - 1) / 2)` for alpha in (1, 2).
pub fn sine_moment(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::Domain(format!(
            "sine moment requires alpha in (1, 2), got {alpha}"
        )));
    }
    Ok(c_alpha(alpha)? * (PI * (alpha - 1.0) / 2.0).tan())
}

/// `(1/pi) * integral of (x - sin x) x^{-alpha-1} over (0, inf) = C_alpha / alpha`
/// for alpha in (1, 3).
pub fn xsin_moment(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha < 3.0) {
        return Err(Error::Domain(format!(
            "x - sin x moment requires alpha in (1, 3), got {alpha}"
        )));
    }
    Ok(c_alpha(alpha)? / alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_integer_and_half_integer_values() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-14);
        let half = PI.sqrt() / 2.0;
        assert!((gamma_fn(1.5).unwrap() - half).abs() < 1e-14);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn gamma_recurrence_property() {
        // Gamma(x + 1) = x Gamma(x) across the working range.
        for &x in &[0.2, 0.7, 1.3, 7.9, 42.5, 99.0, 131.5, 168.5] {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs(), "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn gamma_large_argument_does_not_overflow() {
        let v = gamma_fn(170.0).unwrap();
        assert!(v.is_finite() && v > 1e300);
        assert!(gamma_fn(170.5).is_err());
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn c_alpha_known_points() {
        // C_2 = 1/(2 Gamma(2) sin(pi/2)) = 1/2
        assert!((c_alpha(2.0).unwrap() - 0.5).abs() < 1e-14);
        // C_{1.5} = 1/(2 * (sqrt(pi)/2) * (sqrt(2)/2)) = sqrt(2/pi)
        let expect = (2.0 / PI).sqrt();
        assert!((c_alpha(1.5).unwrap() - expect).abs() < 1e-14);
        assert!(c_alpha(1.0).is_err());
        assert!(c_alpha(3.0).is_err());
    }

    #[test]
    fn sine_moment_known_points() {
        // tan(pi/4) = 1 at alpha = 1.5
        let expect = (2.0 / PI).sqrt();
        assert!((sine_moment(1.5).unwrap() - expect).abs() < 1e-13);
        // alpha -> 1+ recovers the Dirichlet integral value 1/2
        assert!((sine_moment(1.0 + 1e-9).unwrap() - 0.5).abs() < 1e-6);
        assert!(sine_moment(2.0).is_err());
    }

    #[test]
    fn xsin_moment_closed_form_consistency() {
        // C_alpha / alpha coincides with C_{alpha+1} via the Gamma recurrence
        // and sin(pi(alpha-1)/2 + pi/2) = cos identities only at matched
        // points; check the directly computable ones.
        assert!((xsin_moment(2.0).unwrap() - 0.25).abs() < 1e-14);
        let v = xsin_moment(1.5).unwrap();
        let expect = (2.0 / PI).sqrt() / 1.5;
        assert!((v - expect).abs() < 1e-14);
        // Gamma(2.5) = 1.5 Gamma(1.5) and equal sines make C_{2.5} = C_{1.5}/1.5.
        assert!((c_alpha(2.5).unwrap() - v).abs() < 1e-14);
    }
}
