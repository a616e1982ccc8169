//! Cancellation-free evaluations of the trigonometric kernels that appear in
//! every exponent and resolvent integrand.
//!
//! Both `1 - cos y` and `y - sin y` lose all significant digits when computed
//! naively for small `y`; the integrands here are routinely sampled at
//! `y = lambda * x` down to 1e-60.

/// `1 - cos(y)`, computed as `2 sin^2(y/2)` which is exact for all `y`.
#[inline]
pub fn one_minus_cos(y: f64) -> f64 {
    let s = (0.5 * y).sin();
    2.0 * s * s
}

/// `y - sin(y)` with a Taylor branch below |y| = 0.9.
///
/// The direct difference keeps only ~half the digits near the threshold and
/// none at all below ~1e-5; the nested series is accurate to ~1e-12 relative
/// at 0.9 and to machine precision below 0.5.
#[inline]
pub fn x_minus_sin(y: f64) -> f64 {
    if y.abs() < 0.9 {
        let y2 = y * y;
        // y^3/3! - y^5/5! + ... in nested form
        (y * y2 / 6.0)
            * (1.0
                - (y2 / 20.0)
                    * (1.0
                        - (y2 / 42.0)
                            * (1.0
                                - (y2 / 72.0)
                                    * (1.0
                                        - (y2 / 110.0)
                                            * (1.0 - (y2 / 156.0) * (1.0 - y2 / 210.0))))))
    } else {
        y - y.sin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_cos_matches_direct_for_moderate_y() {
        for &y in &[0.5f64, 1.0, 2.0, 3.0, 10.0, 100.0] {
            let direct = 1.0 - y.cos();
            assert!((one_minus_cos(y) - direct).abs() <= 4.0 * f64::EPSILON * direct.abs() + 1e-18);
        }
    }

    #[test]
    fn one_minus_cos_small_argument() {
        // 1 - cos y = y^2/2 - y^4/24 + O(y^6)
        for &y in &[1e-4, 1e-8, 1e-30, 1e-60] {
            let expect = 0.5 * y * y;
            let got = one_minus_cos(y);
            assert!((got - expect).abs() <= 1e-8 * expect, "y={y}: {got} vs {expect}");
        }
    }

    #[test]
    fn x_minus_sin_small_argument() {
        for &y in &[1e-3, 1e-6, 1e-20, -1e-3] {
            let expect = y * y * y / 6.0;
            let got = x_minus_sin(y);
            assert!((got - expect).abs() <= 1e-5 * expect.abs(), "y={y}");
        }
    }

    #[test]
    fn x_minus_sin_continuous_at_threshold() {
        for &y in &[0.8999999, 0.9000001, -0.8999999, -0.9000001] {
            let series = x_minus_sin(y);
            let direct = y - y.sin();
            assert!((series - direct).abs() <= 1e-12 * direct.abs());
        }
    }

    #[test]
    fn both_kernels_are_odd_or_even() {
        for &y in &[0.3, 1.7, 42.0] {
            assert_eq!(one_minus_cos(y), one_minus_cos(-y));
            assert_eq!(x_minus_sin(y), -x_minus_sin(-y));
        }
    }
}
