//! Recovery of initial data from terminal data, mode by mode.
//!
//! Subdiffusive cases divide by `E_{α,1}(ωλ_n T^α)`. The superdiffusive case
//! inverts the 2×2 system sending `(u_{0n}, u_{1n})` to
//! `(u_n(T), ∂_t u_n(T))`, whose determinant is `ψ(λ_n T^α)`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::forward::EvolutionCase;
use crate::mlf::ml;
use crate::spectral::{ModalState, SobolevIndex, Spectrum};

/// Scale of the per-mode floor `denom_floor / (1 + λ_n T^α)` below which a
/// denominator counts as vanishing.
pub const DEFAULT_DENOM_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct BackwardResult {
    pub u0: ModalState,
    pub u1: Option<ModalState>,
    /// `E_{α,1}(ωλ_n T^α)` or `ψ(λ_n T^α)`.
    pub per_mode_denominator: Vec<Complex64>,
    /// `1 / |denominator|`.
    pub condition_report: Vec<f64>,
}

impl BackwardResult {
    /// Log-log slope of the reciprocal denominators against `λ_n`.
    pub fn conditioning_slope(&self) -> Option<f64> {
        self.conditioning_slope_from(1)
    }

    /// The same slope fitted on modes `n >= first_mode` (1-based), where the
    /// large-argument behaviour has set in.
    pub fn conditioning_slope_from(&self, first_mode: usize) -> Option<f64> {
        let skip = first_mode.saturating_sub(1);
        let xs: Vec<f64> = self.u0.spectrum().eigenvalues().iter().skip(skip).map(|l| l.ln()).collect();
        let ys: Vec<f64> = self.condition_report.iter().skip(skip).map(|c| c.ln()).collect();
        linear_fit(&xs, &ys).map(|(slope, _)| slope)
    }
}

fn check_horizon(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("horizon T = {t} must be positive")))
    }
}

fn check_floor(f: f64) -> Result<()> {
    if f > 0.0 && f.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("denominator floor {f} must be positive")))
    }
}

fn ill_posed_modes(denoms: &[Complex64], spectrum: &Spectrum, alpha: f64, horizon: f64, floor: f64) -> Vec<usize> {
    denoms
        .iter()
        .zip(spectrum.eigenvalues())
        .enumerate()
        .filter(|(_, (d, &lambda))| d.norm() < floor / (1.0 + lambda * horizon.powf(alpha)))
        .map(|(n, _)| n + 1)
        .collect()
}

/// `E_{α,1}(ωλ_n T^α)` for every mode: the forward multipliers of the
/// subdiffusive problems.
pub fn sub_multipliers(case: EvolutionCase, alpha: f64, spectrum: &Spectrum, horizon: f64) -> Result<Vec<Complex64>> {
    if case.is_super() || !case.accepts(alpha) {
        return Err(Error::InvalidParameter(format!("{} with alpha = {alpha} is not a subdiffusive case", case.name())));
    }
    check_horizon(horizon)?;
    let omega = case.omega(alpha);
    let ta = horizon.powf(alpha);
    spectrum.eigenvalues().par_iter().map(|&lambda| ml(alpha, 1.0, omega * lambda * ta)).collect()
}

pub fn reconstruct_sub(
    case: EvolutionCase,
    alpha: f64,
    u_t: &ModalState,
    horizon: f64,
    denom_floor: f64,
) -> Result<BackwardResult> {
    check_floor(denom_floor)?;
    let spectrum = Arc::clone(u_t.spectrum());
    let denoms = sub_multipliers(case, alpha, &spectrum, horizon)?;
    let bad = ill_posed_modes(&denoms, &spectrum, alpha, horizon, denom_floor);
    if !bad.is_empty() {
        return Err(Error::IllPosedHorizon { modes: bad });
    }
    let coeffs = u_t.coeffs().iter().zip(&denoms).map(|(a, d)| a / d).collect();
    Ok(BackwardResult {
        u0: ModalState::new(Arc::clone(&spectrum), coeffs)?,
        u1: None,
        condition_report: denoms.iter().map(|d| 1.0 / d.norm()).collect(),
        per_mode_denominator: denoms,
    })
}

/// Forward map of one superdiffusive mode at time `T`:
/// `[[E1, T E2], [ωλT^{α-1} Eα, E1]]` with all functions at `ωλT^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperModeMatrix {
    pub e1: Complex64,
    pub t_e2: Complex64,
    pub rate_ea: Complex64,
}

impl SuperModeMatrix {
    pub fn new(alpha: f64, lambda: f64, horizon: f64) -> Result<Self> {
        let omega = EvolutionCase::NuAlphaSuper.omega(alpha);
        let z = omega * lambda * horizon.powf(alpha);
        Ok(Self {
            e1: ml(alpha, 1.0, z)?,
            t_e2: horizon * ml(alpha, 2.0, z)?,
            rate_ea: omega * lambda * horizon.powf(alpha - 1.0) * ml(alpha, alpha, z)?,
        })
    }

    /// `ψ(λT^α)`.
    pub fn determinant(&self) -> Complex64 {
        self.e1 * self.e1 - self.t_e2 * self.rate_ea
    }

    /// `(u_{0n}, u_{1n})` from `(a_n, b_n)`.
    pub fn solve(&self, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        let psi = self.determinant();
        ((a * self.e1 - b * self.t_e2) / psi, (-a * self.rate_ea + b * self.e1) / psi)
    }

    /// Largest singular value of the inverse matrix.
    pub fn inverse_norm(&self) -> f64 {
        let psi = self.determinant().norm();
        // entries of the adjugate
        let m = [self.e1.norm(), self.t_e2.norm(), self.rate_ea.norm(), self.e1.norm()];
        let frob2: f64 = m.iter().map(|x| x * x).sum();
        let det2 = psi * psi;
        // σ_max² of the adjugate from its trace and determinant
        let disc = (frob2 * frob2 / 4.0 - det2).max(0.0).sqrt();
        (frob2 / 2.0 + disc).sqrt() / psi
    }
}

pub fn reconstruct_super(
    alpha: f64,
    u_t: &ModalState,
    v_t: &ModalState,
    horizon: f64,
    denom_floor: f64,
) -> Result<BackwardResult> {
    if !EvolutionCase::NuAlphaSuper.accepts(alpha) {
        return Err(Error::InvalidParameter(format!("superdiffusive reconstruction needs 1 < alpha < 2, got {alpha}")));
    }
    check_horizon(horizon)?;
    check_floor(denom_floor)?;
    if u_t.spectrum().eigenvalues() != v_t.spectrum().eigenvalues() {
        return Err(Error::InvalidParameter("u(T) and du/dt(T) live on different spectra".into()));
    }
    let spectrum = Arc::clone(u_t.spectrum());
    let mats = spectrum
        .eigenvalues()
        .par_iter()
        .map(|&lambda| SuperModeMatrix::new(alpha, lambda, horizon))
        .collect::<Result<Vec<_>>>()?;
    let denoms: Vec<Complex64> = mats.iter().map(SuperModeMatrix::determinant).collect();
    let bad = ill_posed_modes(&denoms, &spectrum, alpha, horizon, denom_floor);
    if !bad.is_empty() {
        return Err(Error::IllPosedHorizon { modes: bad });
    }
    let (c0, c1): (Vec<_>, Vec<_>) =
        mats.iter().zip(u_t.coeffs().iter().zip(v_t.coeffs())).map(|(m, (&a, &b))| m.solve(a, b)).unzip();
    Ok(BackwardResult {
        u0: ModalState::new(Arc::clone(&spectrum), c0)?,
        u1: Some(ModalState::new(Arc::clone(&spectrum), c1)?),
        condition_report: denoms.iter().map(|d| 1.0 / d.norm()).collect(),
        per_mode_denominator: denoms,
    })
}

/// `max_n 1 / (λ_n |E_{α,1}(ωλ_n T^α)|)`: the constant `C` of
/// `|E_{α,1}(ωλ_n T^α)|^{-1} <= C λ_n` on this spectrum.
pub fn minora_constant(case: EvolutionCase, alpha: f64, spectrum: &Spectrum, horizon: f64) -> Result<f64> {
    let denoms = sub_multipliers(case, alpha, spectrum, horizon)?;
    Ok(denoms.iter().zip(spectrum.eigenvalues()).map(|(d, l)| 1.0 / (l * d.norm())).fold(0.0, f64::max))
}

/// Unit-norm states with i.i.d. complex Gaussian coefficients from a
/// ChaCha8 stream seeded with `seed`.
pub fn unit_corpus(spectrum: &Arc<Spectrum>, size: usize, seed: u64) -> Result<Vec<ModalState>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let coeffs: Vec<Complex64> = (0..spectrum.len())
                .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            let state = ModalState::new(Arc::clone(spectrum), coeffs)?;
            let norm = state.norm();
            Ok(state.scaled(1.0 / norm))
        })
        .collect()
}

/// Random states of the admissible set `‖u0‖_ε <= M`: Gaussian directions
/// rescaled to `‖u0‖_ε = M·r` with `r` uniform on `[0.05, 1]`.
pub fn admissible_corpus(spectrum: &Arc<Spectrum>, size: usize, seed: u64, eps: f64, bound: f64) -> Result<Vec<ModalState>> {
    let idx = SobolevIndex::new(eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_ad);
    let radii = Uniform::new_inclusive(0.05, 1.0);
    unit_corpus(spectrum, size, seed)?
        .into_iter()
        .map(|s| {
            let r: f64 = radii.sample(&mut rng);
            Ok(s.scaled(bound * r / s.hs_norm(idx)))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    pub case: EvolutionCase,
    pub alpha: f64,
    pub horizon: f64,
    pub n_states: usize,
    /// `min ‖u(T)‖_1 / ‖u(0)‖` over the corpus.
    pub lipschitz_lower: f64,
    /// `max ‖u(T)‖_1 / ‖u(0)‖` over the corpus.
    pub lipschitz_upper: f64,
    /// `β = ε/(ε+1)`; absent for a pure Lipschitz scan.
    pub holder_exponent_target: Option<f64>,
    /// The constant `C` used on the right-hand side.
    pub holder_constant: Option<f64>,
    /// `(‖u(0)‖, C^β M^{1-β} ‖u(T)‖^β)` per state.
    pub holder_lhs_rhs_pairs: Vec<(f64, f64)>,
    pub holder_violations: usize,
    /// Least-squares slope of `log ‖u(0)‖` against `log ‖u(T)‖`.
    pub fitted_holder_exponent: Option<f64>,
}

fn ratio_bounds(states: &[ModalState], multipliers: &[Complex64]) -> Result<(Vec<f64>, Vec<f64>, (f64, f64))> {
    let mut norms0 = Vec::with_capacity(states.len());
    let mut norms_t = Vec::with_capacity(states.len());
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for s in states {
        let ut = ModalState::new(Arc::clone(s.spectrum()), s.coeffs().iter().zip(multipliers).map(|(c, m)| c * m).collect())?;
        let n0 = s.norm();
        let nt = ut.norm();
        if n0 > 0.0 {
            let r = ut.hs_norm(SobolevIndex::new(1.0)?) / n0;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        norms0.push(n0);
        norms_t.push(nt);
    }
    if !lo.is_finite() {
        lo = 0.0;
    }
    Ok((norms0, norms_t, (lo, hi)))
}

fn well_posed_multipliers(case: EvolutionCase, alpha: f64, spectrum: &Spectrum, horizon: f64) -> Result<Vec<Complex64>> {
    let m = sub_multipliers(case, alpha, spectrum, horizon)?;
    let bad = ill_posed_modes(&m, spectrum, alpha, horizon, DEFAULT_DENOM_FLOOR);
    if bad.is_empty() {
        Ok(m)
    } else {
        Err(Error::IllPosedHorizon { modes: bad })
    }
}

/// Extremes of `‖u(T)‖_1 / ‖u(0)‖` over a seeded corpus of unit states.
pub fn lipschitz_stability_scan(
    case: EvolutionCase,
    alpha: f64,
    spectrum: &Arc<Spectrum>,
    horizon: f64,
    corpus_size: usize,
    seed: u64,
) -> Result<StabilityReport> {
    let corpus = unit_corpus(spectrum, corpus_size, seed)?;
    lipschitz_scan_on(case, alpha, horizon, &corpus)
}

/// [`lipschitz_stability_scan`] on a given corpus.
pub fn lipschitz_scan_on(case: EvolutionCase, alpha: f64, horizon: f64, corpus: &[ModalState]) -> Result<StabilityReport> {
    let spectrum = corpus.first().map(|s| Arc::clone(s.spectrum())).ok_or_else(|| Error::InvalidParameter("empty corpus".into()))?;
    let m = well_posed_multipliers(case, alpha, &spectrum, horizon)?;
    let (_, _, (lo, hi)) = ratio_bounds(corpus, &m)?;
    Ok(StabilityReport {
        case,
        alpha,
        horizon,
        n_states: corpus.len(),
        lipschitz_lower: lo,
        lipschitz_upper: hi,
        holder_exponent_target: None,
        holder_constant: None,
        holder_lhs_rhs_pairs: Vec::new(),
        holder_violations: 0,
        fitted_holder_exponent: None,
    })
}

/// Checks `‖u(0)‖ <= C^β M^{1-β} ‖u(T)‖^β`, `β = ε/(ε+1)`, on every state
/// of `corpus`, which must lie in `‖u0‖_ε <= M`.
#[allow(clippy::too_many_arguments)]
pub fn holder_stability_scan(
    case: EvolutionCase,
    alpha: f64,
    horizon: f64,
    eps: f64,
    bound: f64,
    constant: f64,
    corpus: &[ModalState],
) -> Result<StabilityReport> {
    if !(eps > 0.0 && bound > 0.0 && constant > 0.0) {
        return Err(Error::InvalidParameter("eps, M and C must be positive".into()));
    }
    let spectrum = corpus.first().map(|s| Arc::clone(s.spectrum())).ok_or_else(|| Error::InvalidParameter("empty corpus".into()))?;
    let idx = SobolevIndex::new(eps)?;
    for s in corpus {
        let n = s.hs_norm(idx);
        if n > bound * (1.0 + 1e-12) {
            return Err(Error::AdmissibilityViolation { norm: n, bound });
        }
    }
    let m = well_posed_multipliers(case, alpha, &spectrum, horizon)?;
    let (norms0, norms_t, (lo, hi)) = ratio_bounds(corpus, &m)?;
    let beta = eps / (eps + 1.0);
    let factor = constant.powf(beta) * bound.powf(1.0 - beta);
    let pairs: Vec<(f64, f64)> = norms0.iter().zip(&norms_t).map(|(&a, &b)| (a, factor * b.powf(beta))).collect();
    let violations = pairs.iter().filter(|(l, r)| *l > *r * (1.0 + 1e-12)).count();
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        norms_t.iter().zip(&norms0).filter(|(t, z)| **t > 0.0 && **z > 0.0).map(|(t, z)| (t.ln(), z.ln())).unzip();
    Ok(StabilityReport {
        case,
        alpha,
        horizon,
        n_states: corpus.len(),
        lipschitz_lower: lo,
        lipschitz_upper: hi,
        holder_exponent_target: Some(beta),
        holder_constant: Some(constant),
        holder_lhs_rhs_pairs: pairs,
        holder_violations: violations,
        fitted_holder_exponent: linear_fit(&xs, &ys).map(|(s, _)| s),
    })
}

/// `(‖u0‖ + ‖u1‖) / (‖u(T)‖_1 + ‖∂_t u(T)‖_1)` for one superdiffusive pair.
pub fn super_stability_ratio(alpha: f64, u0: &ModalState, u1: &ModalState, horizon: f64) -> Result<f64> {
    let mats = u0
        .spectrum()
        .eigenvalues()
        .par_iter()
        .map(|&lambda| SuperModeMatrix::new(alpha, lambda, horizon))
        .collect::<Result<Vec<_>>>()?;
    let sp = Arc::clone(u0.spectrum());
    let (a, b): (Vec<_>, Vec<_>) = mats
        .iter()
        .zip(u0.coeffs().iter().zip(u1.coeffs()))
        .map(|(m, (&x, &y))| (m.e1 * x + m.t_e2 * y, m.rate_ea * x + m.e1 * y))
        .unzip();
    let h1 = SobolevIndex::new(1.0)?;
    let data = ModalState::new(Arc::clone(&sp), a)?.hs_norm(h1) + ModalState::new(sp, b)?.hs_norm(h1);
    Ok((u0.norm() + u1.norm()) / data)
}

/// The concrete form of "T large enough": `λ_1 T^α > R`.
pub fn horizon_beyond_radius(spectrum: &Spectrum, alpha: f64, horizon: f64, radius: f64) -> bool {
    spectrum.smallest() * horizon.powf(alpha) > radius
}
