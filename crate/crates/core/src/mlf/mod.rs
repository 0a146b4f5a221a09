//! Mittag-Leffler functions `E_{α,β}(z) = Σ z^n / Γ(αn + β)` on the complex
//! plane, for `0 < α < 2` and real `β`.
//!
//! Three regimes are combined:
//!
//! * `|z| <= r_taylor`: the power series with compensated summation;
//! * `|z| >= r_asym`: the large-argument expansion, split at `|arg z| = μ`;
//! * in between (and whenever the expansion cannot certify the tolerance):
//!   inversion of the Laplace transform on a parabolic contour.
//!
//! Every evaluation reports the regime it used together with an error
//! estimate. Tolerances are absolute for `|E| <= 1` and relative above.

mod asymptotic;
mod contour;
mod derived;
pub mod gamma;
pub mod identities;
mod series;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use derived::{f_conjecture3, i_pow, ml_key_formula_rhs, psi_asymptotic, psi_eval, PsiTerms};
pub use gamma::{gamma as ml_gamma, gamma_real, rgamma_real};

/// Complex values throughout the crate.
pub type ComplexValue = Complex64;

const LN_F64_MAX: f64 = 709.782_712_893_384;
const CONTOUR_LOG_EPS: f64 = -34.538_776_394_910_684; // ln(1e-15)

/// Parameters of one Mittag-Leffler function together with the evaluation
/// policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlIndex {
    alpha: f64,
    beta: f64,
    mu: f64,
    series_terms_max: usize,
    asymptotic_terms: usize,
    target_abs_tol: f64,
}

impl MlIndex {
    pub const DEFAULT_TOL: f64 = 1e-12;
    pub const DEFAULT_ASYMPTOTIC_TERMS: usize = 5;
    pub const DEFAULT_SERIES_TERMS_MAX: usize = 1000;

    /// `0 < α < 2` with any finite `β`, or the boundary `α = 2` with
    /// `β ∈ {1, 2}`, which is evaluated through `cosh √z` and `sinh √z / √z`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let boundary = alpha == 2.0 && (beta == 1.0 || beta == 2.0);
        if !(alpha > 0.0 && alpha < 2.0) && !boundary {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside (0, 2) (alpha = 2 only with beta = 1 or 2)"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("beta = {beta} is not finite")));
        }
        Ok(Self {
            alpha,
            beta,
            mu: Self::default_mu(alpha),
            series_terms_max: Self::DEFAULT_SERIES_TERMS_MAX,
            asymptotic_terms: Self::DEFAULT_ASYMPTOTIC_TERMS,
            target_abs_tol: Self::DEFAULT_TOL,
        })
    }

    /// Admissible sector parameters are `πα/2 < μ < min(π, πα)`.
    pub fn mu_range(alpha: f64) -> (f64, f64) {
        (PI * alpha / 2.0, PI.min(PI * alpha))
    }

    /// `π·m·(1/2 + m/4)` with `m = min(1, α)`; when that leaves the open
    /// admissible interval the interval midpoint is used instead.
    pub fn default_mu(alpha: f64) -> f64 {
        let m = alpha.min(1.0);
        let mu = PI * m * (0.5 + m / 4.0);
        let (lo, hi) = Self::mu_range(alpha);
        if mu > lo && mu < hi {
            mu
        } else {
            0.5 * (lo + hi)
        }
    }

    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        let (lo, hi) = Self::mu_range(self.alpha);
        if !(mu > lo && mu < hi) {
            return Err(Error::InvalidParameter(format!("mu = {mu} outside ({lo}, {hi})")));
        }
        self.mu = mu;
        Ok(self)
    }

    pub fn with_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
        }
        self.target_abs_tol = tol;
        Ok(self)
    }

    pub fn with_asymptotic_terms(mut self, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("asymptotic_terms must be >= 1".into()));
        }
        self.asymptotic_terms = p;
        Ok(self)
    }

    pub fn with_series_terms_max(mut self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("series_terms_max must be >= 1".into()));
        }
        self.series_terms_max = n;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn target_abs_tol(&self) -> f64 {
        self.target_abs_tol
    }
    pub fn asymptotic_terms(&self) -> usize {
        self.asymptotic_terms
    }

    pub fn r_taylor(&self) -> f64 {
        1.0
    }

    pub fn r_asym(&self) -> f64 {
        10f64.max((-self.target_abs_tol.ln()).powf(self.alpha))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Taylor,
    Asymptotic,
    Contour,
    /// `α = 2` through hyperbolic functions.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalDiagnostics {
    pub regime: Regime,
    pub terms_used: usize,
    pub est_error: f64,
}

/// Log-modulus of the dominant exponential contribution, used to detect
/// overflow before doing any work.
fn dominant_log_modulus(alpha: f64, beta: f64, z: Complex64) -> f64 {
    asymptotic::branch_points(alpha, z)
        .into_iter()
        .map(|(_, s)| asymptotic::exponential_log_modulus(alpha, beta, s))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Evaluate `E_{α,β}(z)`.
pub fn ml_eval(idx: &MlIndex, z: ComplexValue) -> Result<(ComplexValue, EvalDiagnostics)> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite argument {z}")));
    }
    // real Taylor coefficients: E(conj z) = conj E(z)
    if z.im < 0.0 {
        return ml_eval(idx, z.conj()).map(|(v, d)| (v.conj(), d));
    }
    let (alpha, beta, tol) = (idx.alpha, idx.beta, idx.target_abs_tol);
    if z.norm() == 0.0 {
        let diag = EvalDiagnostics { regime: Regime::Taylor, terms_used: 1, est_error: 0.0 };
        return Ok((Complex64::new(rgamma_real(beta), 0.0), diag));
    }
    if alpha == 2.0 {
        return hyperbolic(beta, z);
    }
    let log_mod = dominant_log_modulus(alpha, beta, z);
    if log_mod > LN_F64_MAX - 1.0 {
        return Err(Error::Overflow { log_magnitude: log_mod });
    }

    let accept = |value: Complex64, est: f64| est <= tol * value.norm().max(1.0);
    let real_axis = z.im == 0.0;
    let finish = |value: Complex64, diag: EvalDiagnostics| {
        let value = if real_axis { Complex64::new(value.re, 0.0) } else { value };
        Ok((value, diag))
    };

    let r = z.norm();
    if r <= idx.r_taylor() {
        let out = series::taylor(alpha, beta, z, idx.series_terms_max);
        if accept(out.value, out.est_error) {
            let diag = EvalDiagnostics { regime: Regime::Taylor, terms_used: out.terms, est_error: out.est_error };
            return finish(out.value, diag);
        }
    } else if r >= idx.r_asym() {
        let out = asymptotic::expansion(alpha, beta, idx.mu, idx.asymptotic_terms, tol, z);
        if accept(out.value, out.est_error) {
            let diag = EvalDiagnostics { regime: Regime::Asymptotic, terms_used: out.terms, est_error: out.est_error };
            return finish(out.value, diag);
        }
    }

    match contour::laplace_inversion(alpha, beta, z, CONTOUR_LOG_EPS) {
        Some(out) if accept(out.value, out.est_error) => {
            let diag = EvalDiagnostics { regime: Regime::Contour, terms_used: out.nodes, est_error: out.est_error };
            finish(out.value, diag)
        }
        Some(out) => Err(Error::PrecisionNotReached { est_error: out.est_error, tol }),
        None => Err(Error::PrecisionNotReached { est_error: f64::INFINITY, tol }),
    }
}

/// `E_{2,1}(z) = cosh √z`, `E_{2,2}(z) = sinh √z / √z`.
fn hyperbolic(beta: f64, z: Complex64) -> Result<(Complex64, EvalDiagnostics)> {
    let w = z.sqrt();
    if w.re.abs() > LN_F64_MAX - 1.0 {
        return Err(Error::Overflow { log_magnitude: w.re.abs() });
    }
    let v = if beta == 1.0 { w.cosh() } else { w.sinh() / w };
    let v = if z.im == 0.0 { Complex64::new(v.re, 0.0) } else { v };
    let diag = EvalDiagnostics { regime: Regime::ClosedForm, terms_used: 1, est_error: 4.0 * f64::EPSILON * v.norm().max(1.0) };
    Ok((v, diag))
}

/// Shorthand for `ml_eval` with the default policy, value only.
pub fn ml(alpha: f64, beta: f64, z: ComplexValue) -> Result<ComplexValue> {
    ml_eval(&MlIndex::new(alpha, beta)?, z).map(|(v, _)| v)
}
