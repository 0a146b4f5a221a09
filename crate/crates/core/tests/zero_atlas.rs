//! Zero scans, exceptional times and the conjecture harness.

mod common;

use common::ml_taylor_mp;
use fracschro::constants::FrozenConstants;
use fracschro::mlf::{f_conjecture3, ml, psi_eval};
use fracschro::spectral::Spectrum;
use fracschro::zeros::{
    conjecture_harness, e_axis_radius, exceptional_times, psi_radius, scan_complex_function, scan_e_imag_axis,
    scan_psi, signed_forward_differences, Conjecture, ExceptionalKind, MinimumKind, ScanGrid, Spacing, ZERO_TOL,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn half_order_has_no_imaginary_zeros() {
    for t_max in [10.0, 100.0] {
        let r = scan_e_imag_axis(0.5, t_max, 4000, ZERO_TOL).unwrap();
        assert!(r.confirmed_zeros.is_empty() && r.suspicious.is_empty());
        assert!(r.radius_r > 0.0);
    }
}

#[test]
fn order_point_eight_parts_cross_zero_separately() {
    let r = scan_e_imag_axis(0.8, 50.0, 10_000, ZERO_TOL).unwrap();
    assert!(r.confirmed_zeros.is_empty());
    assert!(r.re_sign_changes >= 1 && r.im_sign_changes >= 1);
    assert!(r.min_component_max > ZERO_TOL);
}

#[test]
fn order_point_six_one_stays_above_the_frozen_floor() {
    let floor = FrozenConstants::builtin().unwrap().zero_floor(0.61).unwrap().floor;
    let r = scan_e_imag_axis(0.61, 50.0, 5000, ZERO_TOL).unwrap();
    assert!(r.min_modulus > floor, "{} vs {floor}", r.min_modulus);
}

#[test]
fn reports_are_consistent() {
    for r in [scan_e_imag_axis(0.7, 100.0, 5000, ZERO_TOL).unwrap(), scan_psi(1.3, 200.0, 5000, ZERO_TOL).unwrap()] {
        assert!(r.radius_r > 0.0);
        assert_eq!(r.complete, r.grid.t_max >= r.radius_r);
        let minima: Vec<f64> = r.minima.iter().map(|m| m.t.abs()).collect();
        assert!(r.confirmed_zeros.iter().all(|z| minima.iter().any(|m| (m - z.abs()).abs() < 1e-12)));
        assert!(r.min_modulus > 0.0);
    }
}

#[test]
fn radii_follow_the_asymptotic_lower_bounds() {
    for alpha in [0.3, 0.7, 0.95] {
        let r = e_axis_radius(alpha, 100.0).unwrap();
        assert!(r >= 50.0 && r.is_finite());
    }
    for alpha in [1.1, 1.5, 1.9] {
        let r = psi_radius(alpha, 200.0).unwrap();
        assert!(r >= 100.0 && r.is_finite());
    }
}

#[test]
fn psi_scans_find_no_zeros() {
    for alpha in [1.2, 1.5, 1.7] {
        let r = scan_psi(alpha, 200.0, 5000, ZERO_TOL).unwrap();
        assert!(r.confirmed_zeros.is_empty(), "{alpha}");
    }
    let r = scan_psi(1.1, 200.0, 10_000, ZERO_TOL).unwrap();
    assert!(r.re_sign_changes >= 1 && r.im_sign_changes >= 1 && r.min_component_max > ZERO_TOL);
    let near = psi_eval(1.4, 1e-9).unwrap();
    assert!((near - 1.0).norm() < 1e-6);
}

#[test]
fn synthetic_zero_is_found_and_survives_refinement() {
    let z0 = std::f64::consts::SQRT_2;
    let f = |t: f64| Ok(c(t - z0, 2.0 * (t - z0)));
    let g = ScanGrid::new(0.0, 3.0, 301, Spacing::Linear).unwrap();
    for grid in [g, g.refined(2)] {
        let (_, minima) = scan_complex_function(f, &grid, ZERO_TOL).unwrap();
        let zeros: Vec<_> = minima.iter().filter(|m| m.kind == MinimumKind::Zero).collect();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0].t - z0).abs() < 1e-9 && zeros[0].refined);
    }
}

#[test]
fn near_miss_is_suspicious_not_a_zero() {
    let f = |t: f64| Ok(c(t - 1.3, 1e-8));
    let g = ScanGrid::new(0.0, 3.0, 301, Spacing::Linear).unwrap();
    let (_, minima) = scan_complex_function(f, &g, ZERO_TOL).unwrap();
    assert!(minima.iter().any(|m| m.kind == MinimumKind::Suspicious));
    assert!(minima.iter().all(|m| m.kind != MinimumKind::Zero));
}

#[test]
fn exceptional_time_examples() {
    let sp = Spectrum::new(vec![1.0, 4.0], "pair").unwrap();
    let e = exceptional_times(ExceptionalKind::Upsilon, &[2.0], &sp, 1.0).unwrap();
    assert_eq!(e.times, vec![0.5, 2.0]);
    assert_eq!(e.sup(), Some(2.0));
    assert!(exceptional_times(ExceptionalKind::Lambda, &[], &sp, 1.5).unwrap().times.is_empty());
    assert!(exceptional_times(ExceptionalKind::Lambda, &[-1.0], &sp, 1.5).is_err());

    let many = Spectrum::new((1..=200).map(|n| (n * n) as f64).collect(), "n^2").unwrap();
    let e = exceptional_times(ExceptionalKind::Upsilon, &[1.5, 4.0, 9.5], &many, 0.8).unwrap();
    assert!(e.times.windows(2).all(|w| w[0] <= w[1]));
    assert!(e.accumulates_only_at_zero());
    assert_eq!(e.source_zeros.len(), 600);
}

#[test]
fn conjecture_harness_examples() {
    let g = ScanGrid::new(0.1, 40.0, 2000, Spacing::Linear).unwrap();
    let r = conjecture_harness(Conjecture::CompleteMonotonicity, 0.35, g, 1e-8).unwrap();
    assert!(r.holds() && r.violations.is_empty());
    assert_eq!(r.min_signed_differences.len(), 6);

    let g = ScanGrid::new(0.0, 200.0, 20_000, Spacing::Linear).unwrap();
    let r = conjecture_harness(Conjecture::NoImaginaryZeros, 0.95, g, ZERO_TOL).unwrap();
    assert!(r.zeros_found.is_empty() && r.holds());

    assert!(Conjecture::from_number(4).is_err());
    let g = ScanGrid::new(0.1, 1.0, 10, Spacing::Linear).unwrap();
    assert!(conjecture_harness(Conjecture::NoImaginaryZeros, 0.5, g, ZERO_TOL).is_err());
    assert!(conjecture_harness(Conjecture::CompleteMonotonicity, 0.7, g, ZERO_TOL).is_err());
}

#[test]
fn conjecture3_function_against_extended_precision_at_one_half() {
    for t in [0.1, 1.0, 3.0, 7.5] {
        let a = ml_taylor_mp(1.0, 1.0, c(-t, 0.0));
        let b = ml_taylor_mp(1.0, 1.5, c(-t, 0.0));
        let exact = a.norm_sqr() + t * b.norm_sqr();
        let v = f_conjecture3(0.5, t).unwrap();
        assert!((v - exact).abs() <= 1e-12 * exact, "{t}: {v} vs {exact}");
    }
}

#[test]
fn forward_differences_of_an_exponential_alternate() {
    let xs: Vec<f64> = (0..20).map(|k| (-0.3 * k as f64).exp()).collect();
    let d = signed_forward_differences(&xs, 4);
    assert_eq!(d.len(), 5);
    assert!(d.iter().all(|row| row.iter().all(|&v| v > 0.0)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn imaginary_axis_values_are_conjugate_symmetric(alpha in 0.2f64..0.99, t in 0.0f64..60.0) {
        let plus = ml(alpha, 1.0, c(0.0, t)).unwrap();
        let minus = ml(alpha, 1.0, c(0.0, -t)).unwrap();
        prop_assert!((plus - minus.conj()).norm() <= 1e-13 * (1.0 + plus.norm()));
    }
}
