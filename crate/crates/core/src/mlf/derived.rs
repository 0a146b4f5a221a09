//! Functions assembled from several Mittag-Leffler evaluations.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gamma_real, ml};
use crate::error::{Error, Result};

/// Principal branch `i^ν = e^{iνπ/2}`.
pub fn i_pow(nu: f64) -> Complex64 {
    Complex64::from_polar(1.0, nu * FRAC_PI_2)
}

/// Right-hand side of `E_{α,1}(-it) = E_{2α,1}(-t²) - i t E_{2α,1+α}(-t²)`.
pub fn ml_key_formula_rhs(alpha: f64, t: f64) -> Result<Complex64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("key formula needs 0 < alpha < 1, got {alpha}")));
    }
    let arg = Complex64::new(-t * t, 0.0);
    let even = ml(2.0 * alpha, 1.0, arg)?;
    let odd = ml(2.0 * alpha, 1.0 + alpha, arg)?;
    Ok(even - Complex64::i() * t * odd)
}

fn check_super_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("psi needs 1 < alpha < 2, got {alpha}")))
    }
}

/// `ψ(t) = E_{α,1}(w t)² - w t E_{α,2}(w t) E_{α,α}(w t)` with `w = i^{-α}`:
/// the determinant of the per-mode system of the superdiffusive backward
/// problem.
pub fn psi_eval(alpha: f64, t: f64) -> Result<Complex64> {
    check_super_alpha(alpha)?;
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("psi needs t > 0, got {t}")));
    }
    let z = i_pow(-alpha) * t;
    let e1 = ml(alpha, 1.0, z)?;
    let e2 = ml(alpha, 2.0, z)?;
    let ea = ml(alpha, alpha, z)?;
    Ok(e1 * e1 - z * e2 * ea)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiTerms {
    Leading,
    TwoTerm,
}

/// Large-`t` expansion of ψ truncated after one or two terms.
pub fn psi_asymptotic(alpha: f64, t: f64, terms: PsiTerms) -> Result<Complex64> {
    check_super_alpha(alpha)?;
    let phase = Complex64::from_polar(1.0, -t.powf(1.0 / alpha));
    let lead = i_pow(alpha - 1.0) / (alpha * gamma_real(2.0 - alpha)?) * t.powf(1.0 / alpha - 1.0) * phase;
    match terms {
        PsiTerms::Leading => Ok(lead),
        PsiTerms::TwoTerm => {
            let second = -2.0 * i_pow(alpha) / (alpha * gamma_real(1.0 - alpha)? * t) * phase;
            Ok(lead + second)
        }
    }
}

/// `f(t) = |E_{2α,1}(-t)|² + t |E_{2α,1+α}(-t)|²` for `0 < α <= 1/2`.
pub fn f_conjecture3(alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::InvalidParameter(format!("f needs 0 < alpha <= 1/2, got {alpha}")));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("f needs t >= 0, got {t}")));
    }
    let arg = Complex64::new(-t, 0.0);
    let a = ml(2.0 * alpha, 1.0, arg)?;
    let b = ml(2.0 * alpha, 1.0 + alpha, arg)?;
    Ok(a.norm_sqr() + t * b.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_formula_at_origin() {
        for a in [0.2, 0.5, 0.9] {
            assert_eq!(ml_key_formula_rhs(a, 0.0).unwrap(), Complex64::new(1.0, 0.0));
        }
        assert!(ml_key_formula_rhs(1.2, 1.0).is_err());
    }

    #[test]
    fn psi_near_origin_is_one() {
        let v = psi_eval(1.5, 1e-8).unwrap();
        assert!((v - 1.0).norm() < 1e-6);
    }

    #[test]
    fn leading_term_modulus() {
        let (a, t) = (1.5, 1e4);
        let v = psi_asymptotic(a, t, PsiTerms::Leading).unwrap();
        let expected = t.powf(1.0 / a - 1.0) / (a * gamma_real(2.0 - a).unwrap());
        assert!((v.norm() - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn f_at_origin() {
        assert_eq!(f_conjecture3(0.35, 0.0).unwrap(), 1.0);
        assert!(f_conjecture3(0.6, 1.0).is_err());
    }
}
