use super::*;
use crate::levy::{LevyProcessSpec, MeasureSpec};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn sv_const(c: f64, loc: SvLocation) -> SlowlyVaryingFn {
    SlowlyVaryingFn::constant(c, loc)
}

fn rv(index: f64, c_theta: f64, c_omega: f64) -> RegularVariationSpec {
    RegularVariationSpec {
        index,
        c_theta,
        c_omega,
        l: sv_const(1.0, SvLocation::AtInfinity),
    }
}

#[test]
fn coeff_pair_symmetric_is_bitwise_equal() {
    let (p, m) = coeff_c_pm(&rv(1.5, 1.0, 0.0)).unwrap();
    assert_eq!(p, m);
    let expect = quad::c_alpha(1.5).unwrap();
    assert!((p - expect).abs() < 1e-15);
}

#[test]
fn coeff_pair_fully_skewed() {
    // cot(3 pi / 4) = -1: the plus coefficient collapses to zero.
    let (p, m) = coeff_c_pm(&rv(1.5, 1.0, 1.0)).unwrap();
    assert!(p.abs() < 1e-15, "{p}");
    let expect = quad::c_alpha(1.5).unwrap();
    assert!((m - expect).abs() < 1e-13, "{m} vs {expect}");
}

#[test]
fn coeff_pair_one_sided_stable_skewness() {
    // c_omega = -c_theta tan(pi alpha / 2) corresponds to a measure with no
    // negative jumps; the plus coefficient must vanish.
    for &alpha in &[1.2, 1.5, 1.8] {
        let t = (PI * alpha / 2.0).tan();
        let (p, _m) = coeff_c_pm(&rv(alpha, 1.0, -t)).unwrap();
        assert!(p.abs() < 1e-12, "alpha={alpha}: {p}");
    }
}

#[test]
fn coeff_sum_identity() {
    // c_plus + c_minus = 2 C_a cTheta / (cTheta^2 + cOmega^2): the cot term
    // cancels in the sum.
    let cases = [(1.3, 0.7, -2.0), (1.5, 1.0, 1.0), (1.9, 3.0, 0.4)];
    for &(alpha, ct, co) in &cases {
        let (p, m) = coeff_c_pm(&rv(alpha, ct, co)).unwrap();
        let expect = 2.0 * quad::c_alpha(alpha).unwrap() * ct / (ct * ct + co * co);
        assert!(
            ((p + m) - expect).abs() <= 1e-12 * expect.abs(),
            "{alpha} {ct} {co}"
        );
    }
}

#[test]
fn coeff_domain_checks() {
    assert!(coeff_c_pm(&rv(2.0, 1.0, 0.0)).is_err());
    assert!(coeff_c_pm(&rv(1.0, 1.0, 0.0)).is_err());
    assert!(coeff_c_pm(&rv(1.5, 0.0, 0.0)).is_err());
}

#[test]
fn zero_variant_is_the_same_formula() {
    let spec = rv(1.5, 2.0, -0.7);
    assert_eq!(
        coeff_c_pm(&spec).unwrap(),
        coeff_c_pm_zero(&spec).unwrap()
    );
}

#[test]
fn density_transfer_symmetric_constants() {
    let kp = sv_const(1.0, SvLocation::AtZero);
    let km = sv_const(1.0, SvLocation::AtZero);
    let rv = density_to_exponent_rv(1.5, &kp, &km).unwrap();
    // pi C_{2.5} = pi C_{1.5} / 1.5 = sqrt(2 pi) / 1.5
    let expect_ct = PI * quad::c_alpha(2.5).unwrap();
    assert!((rv.c_theta - expect_ct).abs() < 1e-13);
    assert_eq!(rv.c_omega, 0.0);
    assert!((rv.l.eval(10.0) - 2.0).abs() < 1e-15);
}

#[test]
fn density_transfer_one_sided_limit() {
    // K_minus identically 0 gives k = 0 and the extremal skew factor +1.
    let kp = sv_const(1.0, SvLocation::AtZero);
    let km = sv_const(0.0, SvLocation::AtZero);
    let rv = density_to_exponent_rv(1.5, &kp, &km).unwrap();
    let expect = PI * quad::c_alpha(1.5).unwrap() / 1.5;
    assert!((rv.c_omega - expect).abs() < 1e-13, "{}", rv.c_omega);
    // ... which numerically equals pi C_{2.5} through the Gamma recurrence.
    assert!((rv.c_omega - PI * quad::c_alpha(2.5).unwrap()).abs() < 1e-13);
}

#[test]
fn density_transfer_swap_antisymmetry() {
    let kp = sv_const(2.0, SvLocation::AtZero);
    let km = sv_const(1.0, SvLocation::AtZero);
    let fwd = density_to_exponent_rv(1.5, &kp, &km).unwrap();
    let rev = density_to_exponent_rv(1.5, &km, &kp).unwrap();
    assert!((fwd.c_omega + rev.c_omega).abs() < 1e-13);
    assert_eq!(fwd.c_theta, rev.c_theta);
    assert!((fwd.l.eval(7.0) - rev.l.eval(7.0)).abs() < 1e-15);
}

#[test]
fn density_transfer_infinite_limit() {
    let kp = sv_const(0.0, SvLocation::AtZero);
    let km = sv_const(3.0, SvLocation::AtZero);
    let rv = density_to_exponent_rv(1.5, &kp, &km).unwrap();
    // skew factor -1
    let expect = -PI * quad::c_alpha(1.5).unwrap() / 1.5;
    assert!((rv.c_omega - expect).abs() < 1e-13);
}

#[test]
fn density_transfer_unstable_ratio_is_rejected() {
    let kp = sv_const(1.0, SvLocation::AtZero);
    // Not slowly varying at all; the ratio sweeps a decade.
    let km = SlowlyVaryingFn::new(|x: f64| x.powf(0.2), SvLocation::AtZero, 0.25);
    assert!(matches!(
        density_to_exponent_rv(1.5, &kp, &km),
        Err(Error::UnstableLimit(_))
    ));
}

#[test]
fn gaussian_pair_symmetric_exact() {
    let ev = ExponentEvaluator::brownian(0.5, 0.0);
    let (p, m) = gaussian_coeff_c_pm(&ev, &cfg()).unwrap();
    assert_eq!(p, 1.0);
    assert_eq!(m, 1.0);

    let ev = ExponentEvaluator::brownian(1.0, 0.0);
    assert_eq!(gaussian_coeff_c_pm(&ev, &cfg()).unwrap(), (0.5, 0.5));
}

#[test]
fn gaussian_pair_drifted_brownian() {
    // Im(lambda/Psi) = -b/(a^2 lambda^2 + b^2), whose integral is
    // -sgn(b) pi/(2a): the pair is (1/(2a) - 1/(2a), 1/(2a) + 1/(2a)).
    let ev = ExponentEvaluator::brownian(0.5, 1.0);
    let (p, m) = gaussian_coeff_c_pm(&ev, &cfg()).unwrap();
    assert!(p.abs() < 1e-9, "{p}");
    assert!((m - 2.0).abs() < 1e-9, "{m}");
}

#[test]
fn gaussian_pair_requires_positive_a() {
    let ev = ExponentEvaluator::closed_form_stable(1.0, 0.0, 1.5).unwrap();
    assert!(matches!(
        gaussian_coeff_c_pm(&ev, &cfg()),
        Err(Error::AssumptionViolated { .. })
    ));
}

#[test]
fn small_lambda_second_moment_and_drift_cases() {
    // One-sided exponential density, a = 0, b = 0:
    //   theta ~ (1/2) integral x^2 e^{-x} dx * lambda^2 = lambda^2
    //   omega ~ (b - integral_1^inf x e^{-x} dx) lambda = -(2/e) lambda
    let spec = LevyProcessSpec::new(0.0, 0.0, MeasureSpec::Exponential { scale: 1.0 }).unwrap();
    let ev = ExponentEvaluator::from_measure(spec, cfg()).unwrap();
    let asy = exponent_rv_at_zero(
        &ev,
        &ThetaZeroCase::SecondMoment,
        &OmegaZeroCase::FirstMomentTail,
        &cfg(),
    )
    .unwrap();
    assert!((asy.theta.coefficient - 1.0).abs() < 1e-9, "{}", asy.theta.coefficient);
    assert_eq!(asy.theta.index, 2.0);
    let expect = -2.0 / std::f64::consts::E;
    assert!(
        (asy.omega.coefficient - expect).abs() < 1e-9,
        "{} vs {expect}",
        asy.omega.coefficient
    );
    assert_eq!(asy.omega.index, 1.0);
}

#[test]
fn small_lambda_pareto_tail_case() {
    use crate::levy::DensityTerm;
    // xi_+(x) = x^{-1.5} 1{x >= 1}: tail index beta = 0.5, K+ = 1, k0 = 0.
    let spec = LevyProcessSpec {
        a: 0.0,
        b: 0.0,
        measure: MeasureSpec::Custom {
            xi_plus: vec![DensityTerm {
                coeff: 1.0,
                power: -1.5,
                one_plus_x_power: 0.0,
                exp_scale: None,
                min_x: Some(1.0),
            }],
            xi_minus: vec![],
            origin_hint: None,
            tail_hint: None,
        },
    };
    let ev = ExponentEvaluator::from_measure(spec, cfg()).unwrap();
    let tail = TailData {
        beta_tail: 0.5,
        k_plus: sv_const(1.0, SvLocation::AtInfinity),
        k_minus: sv_const(0.0, SvLocation::AtInfinity),
    };
    let asy = exponent_rv_at_zero(
        &ev,
        &ThetaZeroCase::RegularTail(tail.clone()),
        &OmegaZeroCase::RegularTail(tail),
        &cfg(),
    )
    .unwrap();
    // pi C_{1.5} = sqrt(2 pi)
    let expect = (2.0 * PI).sqrt();
    assert!(
        (asy.theta.coefficient - expect).abs() < 1e-12,
        "{} vs {expect}",
        asy.theta.coefficient
    );
    // omega coefficient: -tan(pi/4) pi C_{1.5} = -sqrt(2 pi)
    assert!((asy.omega.coefficient + expect).abs() < 1e-12);
}

#[test]
fn small_lambda_case_mismatch_is_detected() {
    // A stable density has no finite second moment.
    let spec = LevyProcessSpec::strictly_stable(1.0, 1.0, 1.5).unwrap();
    let ev = ExponentEvaluator::from_measure(spec, cfg()).unwrap();
    let r = exponent_rv_at_zero(
        &ev,
        &ThetaZeroCase::SecondMoment,
        &OmegaZeroCase::FirstMomentTail,
        &cfg(),
    );
    assert!(matches!(r, Err(Error::CaseMismatch(_))), "{r:?}");
}

#[test]
fn probes_on_the_suite_families() {
    let cfg = cfg();
    // Exact power law: decay exponent alpha > 1.
    let ev = ExponentEvaluator::closed_form_stable(1.0, 0.0, 1.5).unwrap();
    let a = check_a(&ev, 1.0, &cfg).unwrap();
    assert!(a.passed(), "{a:?}");
    let fitted = a.fits[0].exponent;
    assert!((fitted - 1.5).abs() < 0.01, "{fitted}");

    // Positive Gaussian coefficient passes automatically.
    let ev = ExponentEvaluator::brownian(0.5, 1.0);
    assert!(check_a(&ev, 1.0, &cfg).unwrap().passed());
    let z = check_z(&ev, &cfg).unwrap();
    assert!(z.passed(), "{z:?}");

    // Skewed stable: Im(lambda/Psi) ~ lambda^{1-alpha}, exponent -0.5 > -1.
    let ev = ExponentEvaluator::closed_form_stable(1.0, 0.5, 1.5).unwrap();
    let t = check_t(&ev, &cfg).unwrap();
    assert!(t.passed(), "{t:?}");
    let near_zero = t
        .fits
        .iter()
        .find(|f| f.name.contains("near zero"))
        .unwrap();
    assert!((near_zero.exponent + 0.5).abs() < 0.02, "{}", near_zero.exponent);

    // No Gaussian part fails the Gaussian probe.
    let z = check_z(&ev, &cfg).unwrap();
    assert_eq!(z.verdict, ProbeVerdict::Fail);
}

#[test]
fn empirical_estimate_is_exact_for_pure_stable() {
    // Exact homogeneity: the normalized estimate is x-independent.
    let ev = ExponentEvaluator::closed_form_stable(1.0, 0.0, 1.5).unwrap();
    let target = AsymptoticTarget::origin_from_rv(&rv(1.5, 1.0, 0.0)).unwrap();
    let grid = [1.0, 0.1, 0.01];
    let report =
        empirical_coefficient_estimate(&ev, &target, Side::Plus, &grid, &cfg(), 0.05).unwrap();
    assert!(report.converged, "{report:?}");
    let c = quad::c_alpha(1.5).unwrap();
    for p in &report.points {
        assert!(
            (p.normalized_estimate - c).abs() < 1e-7 * c,
            "{p:?}"
        );
    }
    // Points run toward the origin.
    assert!(report.points[0].x.abs() > report.points[2].x.abs());
}

#[test]
fn empirical_estimate_brownian_gaussian_path() {
    let ev = ExponentEvaluator::brownian(0.5, 0.0);
    let target = AsymptoticTarget::gaussian(&ev, &cfg()).unwrap();
    let grid = [0.1, 0.01];
    for side in [Side::Plus, Side::Minus] {
        let report =
            empirical_coefficient_estimate(&ev, &target, side, &grid, &cfg(), 0.05).unwrap();
        assert!(report.converged, "{side:?}: {report:?}");
        let finest = report.points.last().unwrap();
        assert!((finest.normalized_estimate - 1.0).abs() < 1e-6);
    }
}

#[test]
fn ratio_report_converges_for_symmetric_stable() {
    let ev = ExponentEvaluator::closed_form_stable(1.0, 0.0, 1.5).unwrap();
    let target = AsymptoticTarget::origin_from_rv(&rv(1.5, 1.0, 0.0)).unwrap();
    let grid = [0.1, 0.01];
    let report = ratio_hq_h(&ev, &target, 1.0, Side::Plus, &grid, &cfg(), 0.05).unwrap();
    assert!(report.converged, "{report:?}");
    let finest = report.points.last().unwrap();
    assert!((finest.normalized_estimate - 1.0).abs() < 0.05);
}

#[test]
fn ratio_report_not_applicable_when_coefficient_vanishes() {
    let ev = ExponentEvaluator::closed_form_stable(1.0, 1.0, 1.5).unwrap();
    let target = AsymptoticTarget::origin_from_rv(&rv(1.5, 1.0, 1.0)).unwrap();
    let r = ratio_hq_h(&ev, &target, 1.0, Side::Plus, &[0.1], &cfg(), 0.05);
    assert!(matches!(r, Err(Error::NotApplicable(_))), "{r:?}");
}

#[test]
fn potter_diagnostic() {
    assert!(sv_const(3.0, SvLocation::AtInfinity).potter_ok());
    let wild = SlowlyVaryingFn::new(|x: f64| x.powf(0.9), SvLocation::AtInfinity, 0.1);
    assert!(!wild.potter_ok());
}
