//! Closed-form modal solutions of the forward problems
//! `i^ν ∂_t^α u + A u = 0`, where `A` has eigenvalues `-λ_n`.
//!
//! Each mode obeys `∂_t^α c_n = ω λ_n c_n` with `ω = i^{-ν}`, so
//!
//! * `c_n(t) = u_{0n} E_{α,1}(ωλ_n t^α)` for `0 < α < 1`,
//! * `c_n(t) = u_{0n} E_{α,1}(ωλ_n t^α) + u_{1n} t E_{α,2}(ωλ_n t^α)` for `1 < α < 2`.

use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::EsRow;
use crate::error::{Error, Result};
use crate::mlf::{i_pow, ml};
use crate::oracle::l1::caputo_l1;
use crate::oracle::{integrate_l1, IntegratorConfig, ModalOde};
use crate::spectral::{ModalState, SobolevIndex, Spectrum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which of the three well-posed forward problems is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvolutionCase {
    /// `ν = 1`, `0 < α < 1`
    Nu1Sub,
    /// `ν = α`, `0 < α < 1`
    NuAlphaSub,
    /// `ν = α`, `1 < α < 2`
    NuAlphaSuper,
}

impl EvolutionCase {
    pub const ALL: [EvolutionCase; 3] = [Self::Nu1Sub, Self::NuAlphaSub, Self::NuAlphaSuper];

    pub fn nu(self, alpha: f64) -> f64 {
        match self {
            Self::Nu1Sub => 1.0,
            _ => alpha,
        }
    }

    /// Modal rate `ω = i^{-ν}`.
    pub fn omega(self, alpha: f64) -> Complex64 {
        match self {
            Self::Nu1Sub => Complex64::new(0.0, -1.0),
            _ => i_pow(-alpha),
        }
    }

    pub fn accepts(self, alpha: f64) -> bool {
        match self {
            Self::Nu1Sub | Self::NuAlphaSub => alpha > 0.0 && alpha < 1.0,
            Self::NuAlphaSuper => alpha > 1.0 && alpha < 2.0,
        }
    }

    pub fn is_super(self) -> bool {
        self == Self::NuAlphaSuper
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Nu1Sub => "nu1-sub",
            Self::NuAlphaSub => "nu-alpha-sub",
            Self::NuAlphaSuper => "nu-alpha-super",
        }
    }
}

impl std::str::FromStr for EvolutionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown case '{s}' (nu1-sub, nu-alpha-sub, nu-alpha-super)")))
    }
}

/// A validated forward problem on a fixed spectrum.
#[derive(Debug, Clone)]
pub struct EvolutionProblem {
    case: EvolutionCase,
    alpha: f64,
    u0: ModalState,
    u1: Option<ModalState>,
    horizon: f64,
}

impl EvolutionProblem {
    pub fn new(case: EvolutionCase, alpha: f64, u0: ModalState, u1: Option<ModalState>, horizon: f64) -> Result<Self> {
        if !case.accepts(alpha) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} is outside the range of {}", case.name())));
        }
        match (&u1, case.is_super()) {
            (Some(_), false) => return Err(Error::InvalidParameter("u1 is only used when 1 < alpha < 2".into())),
            (None, true) => return Err(Error::InvalidParameter("1 < alpha < 2 needs u1".into())),
            (Some(v), true) if v.spectrum().eigenvalues() != u0.spectrum().eigenvalues() => {
                return Err(Error::InvalidParameter("u0 and u1 live on different spectra".into()))
            }
            _ => {}
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!("horizon T = {horizon} must be positive")));
        }
        Ok(Self { case, alpha, u0, u1, horizon })
    }

    pub fn case(&self) -> EvolutionCase {
        self.case
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn spectrum(&self) -> &Arc<Spectrum> {
        self.u0.spectrum()
    }
    pub fn u0(&self) -> &ModalState {
        &self.u0
    }
    pub fn u1(&self) -> Option<&ModalState> {
        self.u1.as_ref()
    }
    pub fn horizon(&self) -> f64 {
        self.horizon
    }
    pub fn omega(&self) -> Complex64 {
        self.case.omega(self.alpha)
    }

    fn u1_coeff(&self, n: usize) -> Complex64 {
        self.u1.as_ref().map_or(ZERO, |v| v.coeffs()[n])
    }

    fn with_coeffs<F: Fn(usize, f64) -> Result<Complex64>>(&self, f: F) -> Result<ModalState> {
        let coeffs = self
            .spectrum()
            .eigenvalues()
            .iter()
            .enumerate()
            .map(|(n, &lambda)| f(n, lambda))
            .collect::<Result<Vec<_>>>()?;
        ModalState::new(Arc::clone(self.spectrum()), coeffs)
    }
}

fn check_time(t: f64, strict: bool) -> Result<()> {
    let ok = if strict { t > 0.0 } else { t >= 0.0 };
    if ok && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("time t = {t} out of range")))
    }
}

/// `u(t)`. At `t = 0` the initial state is returned unchanged.
pub fn solve_forward(problem: &EvolutionProblem, t: f64) -> Result<ModalState> {
    check_time(t, false)?;
    if t == 0.0 {
        return Ok(problem.u0.clone());
    }
    let (alpha, omega) = (problem.alpha, problem.omega());
    let ta = t.powf(alpha);
    problem.with_coeffs(|n, lambda| {
        let z = omega * lambda * ta;
        let mut c = problem.u0.coeffs()[n] * ml(alpha, 1.0, z)?;
        let v = problem.u1_coeff(n);
        if v != ZERO {
            c += v * t * ml(alpha, 2.0, z)?;
        }
        Ok(c)
    })
}

/// First velocity `∂_t u` including `t = 0` in the superdiffusive case,
/// where it equals `u1`.
fn velocity(problem: &EvolutionProblem, t: f64) -> Result<ModalState> {
    if t == 0.0 && problem.case.is_super() {
        return Ok(problem.u1.clone().expect("validated"));
    }
    let (alpha, omega) = (problem.alpha, problem.omega());
    let ta = t.powf(alpha);
    problem.with_coeffs(|n, lambda| {
        let z = omega * lambda * ta;
        let mut d = problem.u0.coeffs()[n] * omega * lambda * t.powf(alpha - 1.0) * ml(alpha, alpha, z)?;
        let v = problem.u1_coeff(n);
        if v != ZERO {
            d += v * ml(alpha, 1.0, z)?;
        }
        Ok(d)
    })
}

/// `∂_t u` (order 1) or `∂_t² u` (order 2, superdiffusive only) for `t > 0`.
pub fn solve_forward_derivative(problem: &EvolutionProblem, t: f64, order: u8) -> Result<ModalState> {
    check_time(t, true)?;
    match (problem.case, order) {
        (EvolutionCase::Nu1Sub, _) => {
            Err(Error::UnsupportedCase("time derivatives are only provided for the nu = alpha problems".into()))
        }
        (_, 1) => velocity(problem, t),
        (EvolutionCase::NuAlphaSuper, 2) => {
            let (alpha, omega) = (problem.alpha, problem.omega());
            let ta = t.powf(alpha);
            problem.with_coeffs(|n, lambda| {
                let z = omega * lambda * ta;
                let mut d = problem.u0.coeffs()[n] * t.powf(alpha - 2.0) * ml(alpha, alpha - 1.0, z)?;
                let v = problem.u1_coeff(n);
                if v != ZERO {
                    d += v * t.powf(alpha - 1.0) * ml(alpha, alpha, z)?;
                }
                Ok(d * omega * lambda)
            })
        }
        (_, order) => Err(Error::UnsupportedCase(format!("derivative of order {order} for {}", problem.case.name()))),
    }
}

/// Closed-form Caputo derivative `∂_t^α u(t)`, mode by mode `ωλ_n c_n(t)`.
pub fn caputo_derivative(problem: &EvolutionProblem, t: f64) -> Result<ModalState> {
    let omega = problem.omega();
    Ok(solve_forward(problem, t)?.map_modes(|lambda, c| omega * lambda * c))
}

/// `‖i^ν ∂_t^α u(t) + A u(t)‖` with the closed-form Caputo derivative.
pub fn caputo_residual(problem: &EvolutionProblem, t: f64) -> Result<f64> {
    check_time(t, true)?;
    let u = solve_forward(problem, t)?;
    let inu = i_pow(problem.case.nu(problem.alpha));
    let omega = problem.omega();
    let r = u.map_modes(|lambda, c| inu * (omega * lambda * c) - lambda * c);
    Ok(r.norm())
}

/// `‖i^ν D_h^α u(t) + A u(t)‖ / ‖A u(t)‖`, where `D_h^α` is the L1
/// discretisation on `n_steps` uniform intervals of `[0, t]` applied to the
/// closed-form trajectory (to its velocity when `1 < α < 2`).
pub fn l1_caputo_residual(problem: &EvolutionProblem, t: f64, n_steps: usize) -> Result<f64> {
    check_time(t, true)?;
    let cfg = IntegratorConfig::new(n_steps, t)?;
    let h = cfg.step();
    let sampled = (0..=n_steps)
        .into_par_iter()
        .map(|k| {
            let s = k as f64 * h;
            if problem.case.is_super() {
                velocity(problem, s)
            } else {
                solve_forward(problem, s)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let u = solve_forward(problem, t)?;
    let inu = i_pow(problem.case.nu(problem.alpha));
    let coeffs: Vec<Complex64> = (0..u.len())
        .map(|n| {
            let column: Vec<Complex64> = sampled.iter().map(|st| st.coeffs()[n]).collect();
            let lambda = problem.spectrum().eigenvalues()[n];
            inu * caputo_l1(problem.alpha, h, &column) - lambda * u.coeffs()[n]
        })
        .collect();
    let residual = ModalState::new(Arc::clone(problem.spectrum()), coeffs)?.norm();
    let scale = u.apply_operator_power(1.0).norm();
    Ok(if scale > 0.0 { residual / scale } else { residual })
}

/// Modal states on an increasing time grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<ModalState>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<ModalState>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidParameter(format!("{} times for {} states", times.len(), states.len())));
        }
        if let Some(k) = times.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::InvariantViolation { row: k + 2, msg: "times must be strictly increasing".into() });
        }
        if let Some(first) = states.first() {
            if let Some(k) = states.iter().position(|s| s.spectrum().eigenvalues() != first.spectrum().eigenvalues()) {
                return Err(Error::InvariantViolation { row: k + 1, msg: "state on a different spectrum".into() });
            }
        }
        Ok(Self { times, states })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
    pub fn states(&self) -> &[ModalState] {
        &self.states
    }

    /// Rows `t,mode,re,im` with 1-based modes; when `source` is given a
    /// fifth column carries it on every row.
    pub fn write_csv<W: Write>(&self, writer: W, source: Option<&str>) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        match source {
            Some(_) => w.write_record(["t", "mode", "re", "im", "source"])?,
            None => w.write_record(["t", "mode", "re", "im"])?,
        }
        for (t, state) in self.times.iter().zip(&self.states) {
            for (n, c) in state.coeffs().iter().enumerate() {
                let mut row = vec![format!("{t:e}"), (n + 1).to_string(), format!("{:e}", c.re), format!("{:e}", c.im)];
                if let Some(src) = source {
                    row.push(src.to_string());
                }
                w.write_record(&row)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// `u` on every time of `times`, evaluated in parallel.
pub fn solve_trajectory(problem: &EvolutionProblem, times: &[f64]) -> Result<Trajectory> {
    let states = times.par_iter().map(|&t| solve_forward(problem, t)).collect::<Result<Vec<_>>>()?;
    Trajectory::new(times.to_vec(), states)
}

/// The same problem integrated mode by mode with the L1 scheme on
/// `[0, T]`.
pub fn oracle_trajectory(problem: &EvolutionProblem, n_steps: usize) -> Result<Trajectory> {
    let cfg = IntegratorConfig::new(n_steps, problem.horizon)?;
    let omega = problem.omega();
    let columns = problem
        .spectrum()
        .eigenvalues()
        .par_iter()
        .enumerate()
        .map(|(n, &lambda)| {
            let y1 = problem.case.is_super().then(|| problem.u1_coeff(n));
            let ode = ModalOde::new(omega * lambda, problem.alpha, problem.u0.coeffs()[n], y1)?;
            Ok(integrate_l1(&ode, &cfg))
        })
        .collect::<Result<Vec<_>>>()?;
    let times: Vec<f64> = columns[0].iter().map(|&(t, _)| t).collect();
    let states = (0..times.len())
        .map(|k| ModalState::new(Arc::clone(problem.spectrum()), columns.iter().map(|col| col[k].1).collect()))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(times, states)
}

/// One row of the regularity table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityRow {
    pub t: f64,
    /// `‖u(t)‖_s`
    pub norm_s: f64,
    /// `t^α ‖u(t)‖_{s+1}`
    pub weighted_norm_s1: f64,
    /// `t^α ‖∂_t^α u(t)‖_s`
    pub weighted_caputo_s: f64,
}

/// A measured supremum ratio against the data norm, with the frozen bound
/// it is compared to when one is known for this case.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityCheck {
    pub name: String,
    pub measured: f64,
    pub bound: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityReport {
    pub case: EvolutionCase,
    pub alpha: f64,
    pub s: f64,
    /// `‖u0‖_s`, plus `‖u1‖_{s-1/α}` in the superdiffusive case.
    pub data_norm: f64,
    pub rows: Vec<RegularityRow>,
    pub checks: Vec<RegularityCheck>,
}

impl RegularityReport {
    /// No check with a known bound failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass != Some(false))
    }
}

/// Norm table over `time_grid ⊂ (0, T]` and the supremum ratios against the
/// data. Bounds follow from the frozen constants of the growth/decay
/// estimates:
///
/// * `ν = 1`: every ratio is at most `es0`, because `x|E_{α,1}(-ix)| <= es0`;
/// * `ν = α`, `α < 1`: `‖u‖_s` ratio at most `es1`;
/// * `ν = α`, `α > 1`: `‖u‖_s <= es1 ‖u0‖_s + es2 ‖u1‖_{s-1/α}`.
pub fn regularity_report(
    problem: &EvolutionProblem,
    s: f64,
    time_grid: &[f64],
    constants: Option<&EsRow>,
) -> Result<RegularityReport> {
    if let Some(&t) = time_grid.iter().find(|&&t| !(t > 0.0 && t <= problem.horizon)) {
        return Err(Error::InvalidParameter(format!("grid time {t} outside (0, T]")));
    }
    let (alpha, omega) = (problem.alpha, problem.omega());
    let s_idx = SobolevIndex::new(s)?;
    let s1 = SobolevIndex::new(s + 1.0)?;
    let data_norm = problem.u0.hs_norm(s_idx)
        + problem.u1.as_ref().map_or(Ok(0.0), |v| SobolevIndex::new(s - 1.0 / alpha).map(|i| v.hs_norm(i)))?;
    let rows = time_grid
        .par_iter()
        .map(|&t| {
            let u = solve_forward(problem, t)?;
            let ta = t.powf(alpha);
            let caputo = u.map_modes(|lambda, c| omega * lambda * c);
            Ok(RegularityRow {
                t,
                norm_s: u.hs_norm(s_idx),
                weighted_norm_s1: ta * u.hs_norm(s1),
                weighted_caputo_s: ta * caputo.hs_norm(s_idx),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let sup = |f: fn(&RegularityRow) -> f64| {
        let m = rows.iter().map(f).fold(0.0, f64::max);
        if data_norm > 0.0 {
            m / data_norm
        } else {
            0.0
        }
    };
    let es = |pick: fn(&EsRow) -> Option<f64>| constants.and_then(pick);
    let (b_norm, b_s1, b_cap) = match problem.case {
        EvolutionCase::Nu1Sub => (es(|r| r.es0), es(|r| r.es0), es(|r| r.es0)),
        EvolutionCase::NuAlphaSub => (es(|r| r.es1), None, None),
        EvolutionCase::NuAlphaSuper => {
            let b = es(|r| r.es1).zip(es(|r| r.es2)).map(|(a, b)| a.max(b));
            (b, None, None)
        }
    };
    let check = |name: &str, measured: f64, bound: Option<f64>| RegularityCheck {
        name: name.into(),
        measured,
        bound,
        pass: bound.map(|b| measured <= b),
    };
    let checks = vec![
        check("sup ||u(t)||_s / data", sup(|r| r.norm_s), b_norm),
        check("sup t^a ||u(t)||_{s+1} / data", sup(|r| r.weighted_norm_s1), b_s1),
        check("sup t^a ||D^a u(t)||_s / data", sup(|r| r.weighted_caputo_s), b_cap),
    ];
    Ok(RegularityReport { case: problem.case, alpha, s, data_norm, rows, checks })
}

/// `|E_{α,1}(-iλt^α)|` for `1 < α < 2`, the `ν = 1` modal factor that grows
/// like `(1/α) exp(cos(π/(2α)) λ^{1/α} t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthProbe {
    pub log_modulus: f64,
    /// The value left the f64 range; `log_modulus` is then the evaluator's
    /// estimate of the dominant exponential.
    pub overflowed: bool,
}

impl GrowthProbe {
    pub fn modulus(&self) -> f64 {
        if self.overflowed {
            f64::INFINITY
        } else {
            self.log_modulus.exp()
        }
    }
}

pub fn nonphysical_growth_probe(alpha: f64, lambda: f64, t: f64) -> Result<GrowthProbe> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidParameter(format!("growth probe needs 1 < alpha < 2, got {alpha}")));
    }
    if !(lambda > 0.0 && t > 0.0) {
        return Err(Error::InvalidParameter("growth probe needs lambda > 0 and t > 0".into()));
    }
    match ml(alpha, 1.0, Complex64::new(0.0, -lambda * t.powf(alpha))) {
        Ok(v) => Ok(GrowthProbe { log_modulus: v.norm().ln(), overflowed: false }),
        Err(Error::Overflow { log_magnitude }) => Ok(GrowthProbe { log_modulus: log_magnitude, overflowed: true }),
        Err(e) => Err(e),
    }
}
