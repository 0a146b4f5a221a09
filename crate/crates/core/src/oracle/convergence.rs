use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::l1::caputo_l1;
use super::{integrate_l1, IntegratorConfig, ModalOde};
use crate::error::{Error, Result};
use crate::fit::log_log_slope;
use crate::mlf::identities::IdentityCheck;
use crate::mlf::ml;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub n_steps: usize,
    pub h: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub points: Vec<ConvergencePoint>,
    /// Least-squares slope of `ln error` against `ln h`; `None` when fewer
    /// than two errors are positive.
    pub fitted_order: Option<f64>,
}

impl ConvergenceStudy {
    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].error <= w[0].error)
    }
}

/// `y0 E_{α,1}(ωt^α) + y1 t E_{α,2}(ωt^α)`.
pub(crate) fn closed_form(ode: &ModalOde, t: f64) -> Result<Complex64> {
    let z = ode.omega() * t.powf(ode.alpha());
    let mut value = ode.y0() * ml(ode.alpha(), 1.0, z)?;
    if let Some(y1) = ode.y1() {
        value += y1 * t * ml(ode.alpha(), 2.0, z)?;
    }
    Ok(value)
}

/// Endpoint errors of the L1 integrator against the closed form for each
/// step count, and the fitted order.
pub fn convergence_study(ode: &ModalOde, t_end: f64, steps_list: &[usize]) -> Result<ConvergenceStudy> {
    if steps_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("steps_list must be strictly ascending".into()));
    }
    let exact = closed_form(ode, t_end)?;
    let points = steps_list
        .iter()
        .map(|&n| {
            let cfg = IntegratorConfig::new(n, t_end)?;
            let (_, y) = *integrate_l1(ode, &cfg).last().expect("n_steps >= 2");
            Ok(ConvergencePoint { n_steps: n, h: cfg.step(), error: (y - exact).norm() })
        })
        .collect::<Result<Vec<_>>>()?;
    let usable: Vec<&ConvergencePoint> = points.iter().filter(|p| p.error > 0.0).collect();
    let hs: Vec<f64> = usable.iter().map(|p| p.h).collect();
    let errs: Vec<f64> = usable.iter().map(|p| p.error).collect();
    Ok(ConvergenceStudy { fitted_order: log_log_slope(&hs, &errs), points })
}

/// `D^α E_{α,1}(ωt^α) = ω E_{α,1}(ωt^α)` with the left side from the L1
/// discretisation on `n_steps` intervals of `[0, t]`. For `α > 1` the L1
/// sum acts on samples of the first derivative `ω s^{α-1} E_{α,α}(ω s^α)`.
pub fn caputo_identity_check(alpha: f64, omega: Complex64, t: f64, n_steps: usize) -> Result<IdentityCheck> {
    ModalOde::new(omega, alpha, Complex64::new(1.0, 0.0), (alpha > 1.0).then(|| Complex64::new(0.0, 0.0)))?;
    let cfg = IntegratorConfig::new(n_steps, t)?;
    let h = cfg.step();
    let samples = (0..=n_steps)
        .map(|k| {
            let s = k as f64 * h;
            let z = omega * s.powf(alpha);
            if alpha < 1.0 {
                ml(alpha, 1.0, z)
            } else if k == 0 {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Ok(omega * s.powf(alpha - 1.0) * ml(alpha, alpha, z)?)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityCheck {
        name: "caputo E_{a,1}".into(),
        lhs: caputo_l1(alpha, h, &samples),
        rhs: omega * ml(alpha, 1.0, omega * t.powf(alpha))?,
    })
}
