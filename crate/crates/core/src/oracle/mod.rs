//! Brute-force time stepping of the scalar modal equations
//! `D^α y = ω y`, used to certify the closed forms.
//!
//! The integrator in [`l1`] is self-contained; only [`convergence_study`]
//! compares against the Mittag-Leffler evaluator.

mod convergence;
pub mod l1;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use convergence::{caputo_identity_check, convergence_study, ConvergencePoint, ConvergenceStudy};

/// `D^α y = ω y` with `y(0) = y0` and, for `α > 1`, `y'(0) = y1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModalOde {
    omega: Complex64,
    alpha: f64,
    y0: Complex64,
    y1: Option<Complex64>,
}

impl ModalOde {
    pub fn new(omega: Complex64, alpha: f64, y0: Complex64, y1: Option<Complex64>) -> Result<Self> {
        if !((alpha > 0.0 && alpha < 1.0) || (alpha > 1.0 && alpha < 2.0)) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} outside (0,1) ∪ (1,2)")));
        }
        if y1.is_some() != (alpha > 1.0) {
            return Err(Error::InvalidParameter("y1 is required exactly when alpha > 1".into()));
        }
        Ok(Self { omega, alpha, y0, y1 })
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn y0(&self) -> Complex64 {
        self.y0
    }
    pub fn y1(&self) -> Option<Complex64> {
        self.y1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    L1,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    n_steps: usize,
    t_end: f64,
    scheme: Scheme,
}

impl IntegratorConfig {
    pub fn new(n_steps: usize, t_end: f64) -> Result<Self> {
        if n_steps < 2 || !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!("need n_steps >= 2 and t_end > 0, got {n_steps}, {t_end}")));
        }
        Ok(Self { n_steps, t_end, scheme: Scheme::L1 })
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }
    pub fn t_end(&self) -> f64 {
        self.t_end
    }
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
    pub fn step(&self) -> f64 {
        self.t_end / self.n_steps as f64
    }
}

/// Trajectory `(t_k, y_k)` on the uniform grid `t_k = k·t_end/n_steps`.
pub fn integrate_l1(ode: &ModalOde, cfg: &IntegratorConfig) -> Vec<(f64, Complex64)> {
    let h = cfg.step();
    let y1 = ode.y1.unwrap_or_default();
    l1::step(ode.alpha, ode.omega, ode.y0, y1, h, cfg.n_steps)
        .into_iter()
        .enumerate()
        .map(|(k, y)| (k as f64 * h, y))
        .collect()
}
