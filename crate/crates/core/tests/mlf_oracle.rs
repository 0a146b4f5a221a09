//! The production evaluator against the MPFR Taylor oracle, closed forms and
//! the classical identities.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::{ml_taylor_mp, scaled_err};
use fracschro::mlf::identities::{derivative_identities, key_formula_check};
use fracschro::mlf::{
    f_conjecture3, gamma_real, i_pow, ml, ml_eval, ml_gamma, psi_asymptotic, psi_eval, MlIndex, PsiTerms, Regime,
};
use fracschro::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use rug::Float;

/// e·erfc(1), the closed form of `E_{1/2,1}(-1)`.
const E_ERFC_1: f64 = 0.427_583_576_155_807_004_4;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn half_order_at_minus_one_matches_erfc() {
    let oracle = ml_taylor_mp(0.5, 1.0, c(-1.0, 0.0));
    assert!((oracle.re - E_ERFC_1).abs() < 1e-16);
    let (v, _) = ml_eval(&MlIndex::new(0.5, 1.0).unwrap(), c(-1.0, 0.0)).unwrap();
    assert!((v.re - E_ERFC_1).abs() < 1e-12, "{v}");
    assert_eq!(v.im, 0.0);
}

#[test]
fn closed_forms() {
    let e = ml(1.0, 1.0, c(1.0, 0.0)).unwrap();
    assert!((e.re - std::f64::consts::E).abs() < 1e-12);
    // α = 2 is excluded, approach it from below
    let cos_pi = ml(2.0 - 1e-13, 1.0, c(-PI * PI, 0.0)).unwrap();
    assert!((cos_pi.re + 1.0).abs() < 1e-10, "{cos_pi}");
    for t in [0.5, 2.0, 7.5] {
        let sinc = ml(2.0 - 1e-13, 2.0, c(-t * t, 0.0)).unwrap();
        assert!((sinc.re - t.sin() / t).abs() < 1e-10, "t={t} {sinc}");
    }
    for z in [c(0.7, -2.0), c(-6.0, 3.0), c(12.0, 0.5)] {
        let v = ml(1.0, 2.0, z).unwrap();
        let expected = (z.exp() - 1.0) / z;
        assert!(scaled_err(v, expected) < 1e-12, "z={z}");
    }
}

#[test]
fn regimes_are_reported() {
    let idx = MlIndex::new(0.8, 1.0).unwrap();
    assert_eq!(ml_eval(&idx, c(0.5, 0.5)).unwrap().1.regime, Regime::Taylor);
    assert_eq!(ml_eval(&idx, c(-4.0, 1.0)).unwrap().1.regime, Regime::Contour);
    assert_eq!(ml_eval(&idx, c(-40.0, 0.0)).unwrap().1.regime, Regime::Asymptotic);
    for z in [c(0.5, 0.5), c(-4.0, 1.0), c(-40.0, 0.0), c(30.0, 30.0)] {
        let (_, d) = ml_eval(&idx, z).unwrap();
        assert!(d.est_error <= idx.target_abs_tol() * 1e3, "{z} {d:?}");
    }
}

#[test]
fn poles_of_the_asymptotic_coefficients_are_skipped() {
    // β - αk hits the poles of Γ at k = 1, 6, 11, ...
    let z = c(-20.0, 0.0);
    let v = ml(0.8, 0.8, z).unwrap();
    assert!((v - ml_taylor_mp(0.8, 0.8, z)).norm() < 1e-13);
}

#[test]
fn key_formula_examples() {
    for (a, t) in [(0.5, 1.0), (0.8, 3.0)] {
        let check = key_formula_check(a, t).unwrap();
        assert!(check.abs_err() <= 1e-10, "a={a} t={t} {}", check.abs_err());
    }
}

#[test]
fn psi_against_oracle_factors() {
    // three MPFR Taylor sums composed in double precision
    let expected = c(-0.529_312_868_134_933_871, 0.180_708_349_843_989_290);
    let v = psi_eval(1.2, 5.0).unwrap();
    assert!((v - expected).norm() < 1e-12, "{v}");
}

#[test]
fn psi_small_argument() {
    assert!((psi_eval(1.5, 1e-8).unwrap() - 1.0).norm() < 1e-6);
}

#[test]
fn psi_leading_term_at_moderate_time() {
    let v = psi_eval(1.5, 100.0).unwrap();
    let lead = psi_asymptotic(1.5, 100.0, PsiTerms::Leading).unwrap();
    assert!((v - lead).norm() <= 0.1 * lead.norm(), "{v} vs {lead}");
}

#[test]
fn psi_remainder_order() {
    let a = 1.5;
    let scaled: Vec<f64> = [1e3, 2e3, 4e3, 1e4]
        .iter()
        .map(|&t| {
            let rem = (psi_eval(a, t).unwrap() - psi_asymptotic(a, t, PsiTerms::TwoTerm).unwrap()).norm();
            rem * t.powf(1.0 + 1.0 / a)
        })
        .collect();
    let c_fit = scaled.iter().cloned().fold(0.0, f64::max);
    // the remainder constant must neither grow nor collapse across the decade
    assert!(c_fit.is_finite() && c_fit < 10.0, "{scaled:?}");
    let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(lo > 0.0 && c_fit / lo < 10.0, "{scaled:?}");
}

#[test]
fn psi_second_term_modulus() {
    let (a, t) = (1.1, 1e3);
    let one = psi_asymptotic(a, t, PsiTerms::Leading).unwrap();
    let two = psi_asymptotic(a, t, PsiTerms::TwoTerm).unwrap();
    assert!(two.re.is_finite() && two.im.is_finite());
    let bound = 2.0 / (a * gamma_real(1.0 - a).unwrap().abs() * t);
    assert!((two - one).norm() <= bound * (1.0 + 1e-12));
}

#[test]
fn f_at_half_order() {
    // E_{1,1}(-1) = 1/e and E_{1,3/2}(-1) from the MPFR sum
    let b = ml_taylor_mp(1.0, 1.5, c(-1.0, 0.0)).re;
    let expected = (-2f64).exp() + b * b;
    assert!((f_conjecture3(0.5, 1.0).unwrap() - expected).abs() < 1e-13);
    assert!((expected - 0.503_975_762_999_197_089).abs() < 1e-15);
}

#[test]
fn overflow_and_invalid_arguments() {
    let z = i_pow(-1.0) * 1e6 * 10f64.powf(1.5);
    assert!(matches!(ml(1.5, 1.0, z), Err(Error::Overflow { .. })));
    assert!(matches!(ml(0.5, 1.0, c(f64::NAN, 0.0)), Err(Error::InvalidParameter(_))));
    assert!(matches!(ml_gamma(c(-2.0, 0.0)), Err(Error::Pole(_))));
}

#[test]
fn gamma_matches_mpfr() {
    let mut x = -49.95;
    while x <= 50.0 {
        let reference = Float::with_val(128, x).gamma().to_f64();
        let g = gamma_real(x).unwrap();
        assert!(((g - reference) / reference).abs() < 1e-13, "x={x} {g} {reference}");
        x += 0.173;
    }
}

const ALPHAS: [f64; 5] = [0.3, 0.5, 0.8, 1.2, 1.5];

/// Largest `|z|` for which the oracle stays cheap: the biggest Taylor term
/// is about `exp(|z|^{1/α})`.
fn oracle_radius_cap(alpha: f64) -> f64 {
    3000f64.powf(alpha)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn asymptotic_region_agrees_with_oracle(ai in 0usize..5, bi in 0usize..3, ray in 0usize..5, scale in 1.0f64..10.0, neg in any::<bool>()) {
        let alpha = ALPHAS[ai];
        let beta = [1.0, 2.0, alpha][bi];
        let idx = MlIndex::new(alpha, beta).unwrap();
        let r = (idx.r_asym() * scale).min(oracle_radius_cap(alpha));
        let theta = [FRAC_PI_2, PI * alpha / 2.0, PI, FRAC_PI_2, PI * alpha / 2.0][ray];
        let theta = if neg { -theta } else { theta };
        let z = Complex64::from_polar(r, theta);
        let (v, _) = ml_eval(&idx, z).unwrap();
        let reference = ml_taylor_mp(alpha, beta, z);
        prop_assert!(scaled_err(v, reference) <= 1e-8, "z={} v={} ref={}", z, v, reference);
    }

    #[test]
    fn annulus_agrees_with_oracle(ai in 0usize..5, bi in 0usize..3, r in 1.0f64..10.0, theta in -PI..PI) {
        let alpha = ALPHAS[ai];
        let beta = [1.0, 2.0, alpha][bi];
        let z = Complex64::from_polar(r, theta);
        let v = ml(alpha, beta, z).unwrap();
        prop_assert!(scaled_err(v, ml_taylor_mp(alpha, beta, z)) <= 1e-11);
    }

    #[test]
    fn key_formula_holds(ai in 0usize..4, t in 0.0f64..50.0) {
        let alpha = [0.3, 0.5, 0.61, 0.8][ai];
        prop_assert!(key_formula_check(alpha, t).unwrap().abs_err() <= 1e-10);
    }

    #[test]
    fn derivative_identities_hold(alpha in 0.2f64..1.9, scale in 0.1f64..20.0, t in 0.2f64..3.0, on_growth_ray in any::<bool>()) {
        prop_assume!((alpha - 1.0).abs() > 1e-3);
        let omega = if on_growth_ray || alpha > 1.0 { i_pow(-alpha) } else { c(0.0, -1.0) } * scale;
        for check in derivative_identities(alpha, omega, t).unwrap() {
            prop_assert!(check.rel_err() <= 1e-5, "{} {}", check.name, check.rel_err());
        }
    }

    /// Complete monotonicity of `t ↦ E_{2α,β}(-t)` for `2α <= 1`, `β >= 2α`,
    /// seen through the sign of forward differences.
    #[test]
    fn complete_monotonicity(a2 in 0.1f64..=1.0, extra in 0.0f64..2.0, t in 0.0f64..30.0, h in 0.05f64..1.0) {
        let beta = a2 + extra;
        let f = |s: f64| ml(a2, beta, c(-s, 0.0)).unwrap().re;
        let v: Vec<f64> = (0..4).map(|k| f(t + k as f64 * h)).collect();
        let d1 = v[0] - v[1];
        let d2 = v[0] - 2.0 * v[1] + v[2];
        let d3 = v[0] - 3.0 * v[1] + 3.0 * v[2] - v[3];
        let tol = 1e-12;
        prop_assert!(v[0] >= -tol && d1 >= -tol && d2 >= -tol && d3 >= -tol, "{:?}", v);
    }
}
