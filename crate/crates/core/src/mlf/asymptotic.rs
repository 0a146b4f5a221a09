//! Large-`|z|` expansion: an algebraic tail `-Σ z^{-k}/Γ(β-αk)` plus the
//! exponential term `(1/α) z^{(1-β)/α} exp(z^{1/α})` inside the sector
//! `|arg z| <= μ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::rgamma_real;

/// Hard cap on the algebraic terms; the series is divergent so past the
/// optimal truncation point more terms only make things worse.
const MAX_ALGEBRAIC_TERMS: usize = 400;

#[derive(Debug, Clone, Copy)]
pub(crate) struct AsymptoticOutcome {
    pub value: Complex64,
    pub terms: usize,
    pub est_error: f64,
}

/// Branch points `s_k = |z|^{1/α} e^{i(θ+2πk)/α}` with `|θ + 2πk| <= απ`.
/// These are the poles of the Laplace transform `s^{α-β}/(s^α - z)` on the
/// principal sheet.
pub(crate) fn branch_points(alpha: f64, z: Complex64) -> Vec<(i64, Complex64)> {
    let theta = z.arg();
    let kmin = (-alpha / 2.0 - theta / (2.0 * PI)).ceil() as i64;
    let kmax = (alpha / 2.0 - theta / (2.0 * PI)).floor() as i64;
    let r = z.norm().powf(1.0 / alpha);
    (kmin..=kmax)
        .map(|k| (k, Complex64::from_polar(r, (theta + 2.0 * PI * k as f64) / alpha)))
        .collect()
}

/// `(1/α) s^{1-β} e^{s}`, assembled in log space.
pub(crate) fn exponential_term(alpha: f64, beta: f64, s: Complex64) -> Complex64 {
    if s.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (s + (1.0 - beta) * s.ln() - alpha.ln()).exp()
}

/// Log-modulus of [`exponential_term`].
pub(crate) fn exponential_log_modulus(alpha: f64, beta: f64, s: Complex64) -> f64 {
    s.re + (1.0 - beta) * s.norm().ln() - alpha.ln()
}

/// `1/Γ(x)` where `x = β - αk` was formed in floating point: arguments
/// within rounding distance of a pole are treated as the pole itself.
fn rgamma_snapped(x: f64, magnitude: f64) -> f64 {
    let nearest = x.round();
    if nearest <= 0.0 && (x - nearest).abs() <= 16.0 * f64::EPSILON * magnitude.max(1.0) {
        0.0
    } else {
        rgamma_real(x)
    }
}

pub(crate) fn expansion(
    alpha: f64,
    beta: f64,
    mu: f64,
    min_terms: usize,
    tol: f64,
    z: Complex64,
) -> AsymptoticOutcome {
    let w = z.inv();
    let mut power = w;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_mag = f64::INFINITY;
    let mut last_nonzero = f64::INFINITY;
    let mut est_error = f64::INFINITY;
    let mut terms = 0;
    for k in 1..=MAX_ALGEBRAIC_TERMS {
        let term = -power * rgamma_snapped(beta - alpha * k as f64, beta.abs() + alpha * k as f64);
        let mag = term.norm();
        if mag == 0.0 {
            // a pole of Γ: the term is absent and says nothing about convergence
            sum += term;
            terms = k;
            power *= w;
            continue;
        }
        if k > min_terms {
            if mag > last_nonzero {
                // divergence has set in; the smallest term bounds the remainder
                est_error = last_nonzero;
                break;
            }
            let scale = sum.norm().max(1.0);
            if mag <= 1e-3 * tol * scale && prev_mag <= 1e-3 * tol * scale {
                sum += term;
                terms = k;
                est_error = mag + prev_mag;
                break;
            }
        }
        sum += term;
        terms = k;
        prev_mag = mag;
        last_nonzero = mag;
        power *= w;
    }
    if est_error.is_infinite() {
        est_error = last_nonzero;
    }

    let theta = z.arg();
    for (k, s) in branch_points(alpha, z) {
        if k == 0 && theta.abs() <= mu {
            sum += exponential_term(alpha, beta, s);
        } else {
            // genuine contribution dropped by the sector split
            est_error += exponential_log_modulus(alpha, beta, s).exp();
        }
    }

    AsymptoticOutcome { value: sum, terms, est_error }
}
