//! Zeros and modulus minima of `E_{α,1}(it)` and `ψ(t)`, the exceptional
//! horizon sets built from them, and the numerical harness for the three
//! open conjectures.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlf::{f_conjecture3, gamma_real, ml, psi_asymptotic, psi_eval, PsiTerms};
use crate::optimize::brent_min;
use crate::spectral::Spectrum;

/// Both components below this count as a zero.
pub const ZERO_TOL: f64 = 1e-10;
/// Refined minima below this modulus that are not zeros get flagged.
pub const SUSPICIOUS_TOL: f64 = 1e-6;
pub const DEFAULT_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanAxis {
    ImagAxisE,
    PositiveRayPsi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl ScanGrid {
    pub fn new(t_min: f64, t_max: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        let log_ok = spacing == Spacing::Linear || t_min > 0.0;
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max && n_points >= 3 && log_ok) {
            return Err(Error::InvalidParameter(format!(
                "bad grid [{t_min}, {t_max}] with {n_points} {spacing:?} points"
            )));
        }
        Ok(Self { t_min, t_max, n_points, spacing })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|k| {
                let s = k as f64 / n;
                match self.spacing {
                    Spacing::Linear => self.t_min + (self.t_max - self.t_min) * s,
                    Spacing::Log => (self.t_min.ln() + (self.t_max / self.t_min).ln() * s).exp(),
                }
            })
            .collect()
    }

    /// Same range with `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        Self { n_points: (self.n_points - 1) * factor + 1, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimumKind {
    Zero,
    Suspicious,
    Clear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub t: f64,
    pub modulus: f64,
    pub value: Complex64,
    pub refined: bool,
    pub kind: MinimumKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroScanReport {
    pub alpha: f64,
    pub axis: ScanAxis,
    pub grid: ScanGrid,
    pub tol: f64,
    pub minima: Vec<Minimum>,
    pub confirmed_zeros: Vec<f64>,
    pub suspicious: Vec<f64>,
    /// Beyond this point the asymptotic lower bound rules zeros out.
    pub radius_r: f64,
    /// `t_max >= radius_r`: the scan and the certified tail cover the
    /// whole half-line.
    pub complete: bool,
    /// Smallest modulus over grid and refined minima.
    pub min_modulus: f64,
    /// `min max(|Re|, |Im|)` over the grid.
    pub min_component_max: f64,
    pub re_sign_changes: usize,
    pub im_sign_changes: usize,
}

fn sign_changes(xs: impl Iterator<Item = f64>) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for x in xs {
        if x != 0.0 {
            if last != 0.0 && (x > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = x;
        }
    }
    count
}

/// Modulus minima of a complex function on a grid, refined with Brent's
/// method on `|f|²` over the two neighbouring intervals and classified by
/// the size of both components.
pub fn scan_complex_function<F>(f: F, grid: &ScanGrid, tol: f64) -> Result<(Vec<(f64, Complex64)>, Vec<Minimum>)>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let ts = grid.points();
    let values = ts.par_iter().map(|&t| f(t).map(|v| (t, v))).collect::<Result<Vec<_>>>()?;
    let m: Vec<f64> = values.iter().map(|(_, v)| v.norm()).collect();
    let candidates: Vec<usize> = (1..m.len() - 1).filter(|&k| m[k] <= m[k - 1] && m[k] <= m[k + 1]).collect();
    let minima = candidates
        .par_iter()
        .map(|&k| {
            let (a, b) = (ts[k - 1], ts[k + 1]);
            let mut failed = None;
            let (t, _) = brent_min(
                |t| match f(t) {
                    Ok(v) => v.norm_sqr(),
                    Err(e) => {
                        failed.get_or_insert(e);
                        f64::INFINITY
                    }
                },
                a,
                b,
                1e-14 * (b - a).max(1.0),
                200,
            );
            if let Some(e) = failed {
                return Err(e);
            }
            let (t, value) = match f(t) {
                Ok(v) if v.norm() <= m[k] => (t, v),
                _ => values[k],
            };
            let kind = if value.re.abs() <= tol && value.im.abs() <= tol {
                MinimumKind::Zero
            } else if value.norm() <= SUSPICIOUS_TOL {
                MinimumKind::Suspicious
            } else {
                MinimumKind::Clear
            };
            Ok(Minimum { t, modulus: value.norm(), value, refined: true, kind })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((values, minima))
}

fn assemble(
    alpha: f64,
    axis: ScanAxis,
    grid: ScanGrid,
    tol: f64,
    values: &[(f64, Complex64)],
    minima: Vec<Minimum>,
    radius_r: f64,
) -> ZeroScanReport {
    let pick = |k: MinimumKind| minima.iter().filter(|m| m.kind == k).map(|m| m.t).collect::<Vec<_>>();
    let confirmed_zeros = pick(MinimumKind::Zero);
    let suspicious = pick(MinimumKind::Suspicious);
    let grid_min = values.iter().map(|(_, v)| v.norm()).fold(f64::INFINITY, f64::min);
    let min_modulus = minima.iter().map(|m| m.modulus).fold(grid_min, f64::min);
    ZeroScanReport {
        alpha,
        axis,
        grid,
        tol,
        confirmed_zeros,
        suspicious,
        radius_r,
        complete: grid.t_max >= radius_r,
        min_modulus,
        min_component_max: values.iter().map(|(_, v)| v.re.abs().max(v.im.abs())).fold(f64::INFINITY, f64::min),
        re_sign_changes: sign_changes(values.iter().map(|(_, v)| v.re)),
        im_sign_changes: sign_changes(values.iter().map(|(_, v)| v.im)),
        minima,
    }
}

/// `M` minimising `Σ (r_k - M w_k)²`.
fn least_squares_scale(rs: &[f64], ws: &[f64]) -> f64 {
    let num: f64 = rs.iter().zip(ws).map(|(r, w)| r * w).sum();
    let den: f64 = ws.iter().map(|w| w * w).sum();
    if den > 0.0 {
        (num / den).max(0.0)
    } else {
        0.0
    }
}

fn tail_samples(t_max: f64) -> Vec<f64> {
    (0..=64).map(|k| t_max * (0.5 + 0.5 * k as f64 / 64.0)).collect()
}

/// `R = max(t_max/2, Γ(1-α) M)` where `M` is the least-squares constant of
/// `|E_{α,1}(it) - i/(Γ(1-α) t)| ≈ M/t²` on `[t_max/2, t_max]`. For
/// `t > R` the bound `|E_{α,1}(it)| >= (1/t)(1/Γ(1-α) - M/t)` is positive.
pub fn e_axis_radius(alpha: f64, t_max: f64) -> Result<f64> {
    let g = gamma_real(1.0 - alpha)?;
    let ts = tail_samples(t_max);
    let rs = ts
        .iter()
        .map(|&t| ml(alpha, 1.0, Complex64::new(0.0, t)).map(|v| (v - Complex64::new(0.0, 1.0 / (g * t))).norm()))
        .collect::<Result<Vec<_>>>()?;
    let ws: Vec<f64> = ts.iter().map(|t| t.powi(-2)).collect();
    let m = least_squares_scale(&rs, &ws);
    Ok((0.5 * t_max).max(g * m))
}

/// Zeros of `t ↦ E_{α,1}(it)` for `0 < α < 1`. Real Taylor coefficients give
/// `E(-it) = conj E(it)`, so only `t >= 0` is sampled and every zero found is
/// mirrored.
pub fn scan_e_imag_axis(alpha: f64, t_max: f64, n_points: usize, tol: f64) -> Result<ZeroScanReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("imaginary-axis scan needs 0 < alpha < 1, got {alpha}")));
    }
    let grid = ScanGrid::new(0.0, t_max, n_points, Spacing::Linear)?;
    let (values, minima) = scan_complex_function(|t| ml(alpha, 1.0, Complex64::new(0.0, t)), &grid, tol)?;
    let r = e_axis_radius(alpha, t_max)?;
    let mut report = assemble(alpha, ScanAxis::ImagAxisE, grid, tol, &values, minima, r);
    let mirrored = |v: &[f64]| {
        let mut out: Vec<f64> = v.iter().flat_map(|&t| if t > 0.0 { vec![-t, t] } else { vec![t] }).collect();
        out.sort_by(f64::total_cmp);
        out
    };
    report.confirmed_zeros = mirrored(&report.confirmed_zeros);
    report.suspicious = mirrored(&report.suspicious);
    Ok(report)
}

/// Radius beyond which `|ψ(t)| >= t^{1/α-1} / (2αΓ(2-α))`: the smallest `t`
/// (and at least `t_max/2`) where half the leading term dominates the
/// second term plus the remainder `K t^{-1-1/α}`, with `K` fitted on
/// `[t_max/2, t_max]`.
pub fn psi_radius(alpha: f64, t_max: f64) -> Result<f64> {
    let lead = 1.0 / (alpha * gamma_real(2.0 - alpha)?);
    let second = 2.0 / (alpha * gamma_real(1.0 - alpha)?.abs());
    let ts = tail_samples(t_max);
    let rs = ts
        .iter()
        .map(|&t| Ok((psi_eval(alpha, t)? - psi_asymptotic(alpha, t, PsiTerms::TwoTerm)?).norm()))
        .collect::<Result<Vec<_>>>()?;
    let ws: Vec<f64> = ts.iter().map(|t| t.powf(-1.0 - 1.0 / alpha)).collect();
    let k = least_squares_scale(&rs, &ws);
    // after dividing by t^{1/α-1} the margin is increasing in t
    let margin = |t: f64| 0.5 * lead - second * t.powf(-1.0 / alpha) - k * t.powf(-2.0 / alpha);
    let (mut lo, mut hi) = (-12.0_f64, 30.0_f64);
    if margin(hi.exp()) < 0.0 {
        return Ok(f64::INFINITY);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid.exp()) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((0.5 * t_max).max(hi.exp()))
}

/// Default left end of the logarithmic ψ grid.
pub const PSI_T_MIN: f64 = 1e-3;

/// Zeros of `ψ` on `(0, t_max]` for `1 < α < 2`, on a log-spaced grid.
pub fn scan_psi(alpha: f64, t_max: f64, n_points: usize, tol: f64) -> Result<ZeroScanReport> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidParameter(format!("psi scan needs 1 < alpha < 2, got {alpha}")));
    }
    let grid = ScanGrid::new(PSI_T_MIN.min(t_max / 10.0), t_max, n_points, Spacing::Log)?;
    let (values, minima) = scan_complex_function(|t| psi_eval(alpha, t), &grid, tol)?;
    let r = psi_radius(alpha, t_max)?;
    Ok(assemble(alpha, ScanAxis::PositiveRayPsi, grid, tol, &values, minima, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExceptionalKind {
    /// From the zeros of `E_{α,1}(-i·)`.
    Upsilon,
    /// From the zeros of `ψ`.
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceZero {
    /// 1-based index into the zero list.
    pub k: usize,
    /// 1-based mode.
    pub n: usize,
    pub zero: f64,
    pub lambda: f64,
    pub time: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExceptionalTimes {
    pub kind: ExceptionalKind,
    pub times: Vec<f64>,
    pub source_zeros: Vec<SourceZero>,
}

impl ExceptionalTimes {
    pub fn sup(&self) -> Option<f64> {
        self.times.last().copied()
    }

    /// For each zero the times `(z/λ_n)^{1/α}` decrease in `n` with
    /// non-increasing gaps, so the only accumulation point is 0.
    pub fn accumulates_only_at_zero(&self) -> bool {
        let k_max = self.source_zeros.iter().map(|s| s.k).max().unwrap_or(0);
        (1..=k_max).all(|k| {
            let ts: Vec<f64> = self.source_zeros.iter().filter(|s| s.k == k).map(|s| s.time).collect();
            let gaps: Vec<f64> = ts.windows(2).map(|w| w[0] - w[1]).collect();
            gaps.iter().all(|&g| g >= 0.0) && gaps.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12))
        })
    }
}

/// `{(z_k / λ_n)^{1/α}}` over all positive zeros and modes, sorted.
pub fn exceptional_times(kind: ExceptionalKind, zeros: &[f64], spectrum: &Spectrum, alpha: f64) -> Result<ExceptionalTimes> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside (0, 2)")));
    }
    if let Some(z) = zeros.iter().find(|z| !(z.is_finite() && **z > 0.0)) {
        return Err(Error::InvalidParameter(format!("zero {z} is not a positive number")));
    }
    let mut sorted = zeros.to_vec();
    sorted.sort_by(f64::total_cmp);
    let source_zeros: Vec<SourceZero> = sorted
        .iter()
        .enumerate()
        .flat_map(|(k, &zero)| {
            spectrum.eigenvalues().iter().enumerate().map(move |(n, &lambda)| SourceZero {
                k: k + 1,
                n: n + 1,
                zero,
                lambda,
                time: (zero / lambda).powf(1.0 / alpha),
            })
        })
        .collect();
    let mut times: Vec<f64> = source_zeros.iter().map(|s| s.time).collect();
    times.sort_by(f64::total_cmp);
    Ok(ExceptionalTimes { kind, times, source_zeros })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conjecture {
    /// `E_{α,1}(it) ≠ 0` for `3/5 < α < 1`.
    NoImaginaryZeros,
    /// `ψ(t) ≠ 0` on `(0, ∞)` for `1 < α < 2`.
    PsiNonvanishing,
    /// `f` completely monotone (or log-convex) for `0 < α <= 1/2`.
    CompleteMonotonicity,
}

impl Conjecture {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Self::NoImaginaryZeros),
            2 => Ok(Self::PsiNonvanishing),
            3 => Ok(Self::CompleteMonotonicity),
            _ => Err(Error::InvalidParameter(format!("conjecture {n} does not exist (1, 2 or 3)"))),
        }
    }

    pub fn accepts(self, alpha: f64) -> bool {
        match self {
            Self::NoImaginaryZeros => alpha > 0.6 && alpha < 1.0,
            Self::PsiNonvanishing => alpha > 1.0 && alpha < 2.0,
            Self::CompleteMonotonicity => alpha > 0.0 && alpha <= 0.5,
        }
    }
}

/// A sign-pattern violation of conjecture 3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignViolation {
    pub t: f64,
    /// Difference order `k` (`0..=4`), or `-2` for the second difference of
    /// `log f`.
    pub order: i32,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub alpha: f64,
    pub grid: ScanGrid,
    /// Conjectures 1 and 2: smallest modulus and whether the tail is
    /// certified.
    pub min_modulus: Option<f64>,
    pub tail_certified: Option<bool>,
    pub zeros_found: Vec<f64>,
    /// Conjecture 3: every `(-1)^k Δ^k f < -tol` and `Δ² log f < -tol`.
    pub violations: Vec<SignViolation>,
    /// Smallest `(-1)^k Δ^k f` per order `k = 0..=4`, then `Δ² log f`.
    pub min_signed_differences: Vec<f64>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.zeros_found.is_empty() && self.violations.is_empty() && self.tail_certified != Some(false)
    }
}

/// `(-1)^k Δ^k` of a sampled sequence, `k = 0..=max_order`.
pub fn signed_forward_differences(values: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let mut out = vec![values.to_vec()];
    for k in 1..=max_order {
        let prev = &out[k - 1];
        // the sign flip of each order is folded into the recursion
        out.push(prev.windows(2).map(|w| w[0] - w[1]).collect());
    }
    out
}

pub fn conjecture_harness(which: Conjecture, alpha: f64, grid: ScanGrid, tol: f64) -> Result<ConjectureReport> {
    if !which.accepts(alpha) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside the range of {which:?}")));
    }
    let base = |min_modulus, tail, zeros| ConjectureReport {
        conjecture: which,
        alpha,
        grid,
        min_modulus,
        tail_certified: tail,
        zeros_found: zeros,
        violations: Vec::new(),
        min_signed_differences: Vec::new(),
    };
    match which {
        Conjecture::NoImaginaryZeros => {
            let r = scan_e_imag_axis(alpha, grid.t_max, grid.n_points, tol)?;
            Ok(base(Some(r.min_modulus), Some(r.complete), r.confirmed_zeros))
        }
        Conjecture::PsiNonvanishing => {
            let r = scan_psi(alpha, grid.t_max, grid.n_points, tol)?;
            Ok(base(Some(r.min_modulus), Some(r.complete), r.confirmed_zeros))
        }
        Conjecture::CompleteMonotonicity => {
            let ts = grid.points();
            let f = ts.par_iter().map(|&t| f_conjecture3(alpha, t)).collect::<Result<Vec<_>>>()?;
            let diffs = signed_forward_differences(&f, 4);
            let logs: Vec<f64> = f.iter().map(|v| v.ln()).collect();
            let log2: Vec<f64> = logs.windows(3).map(|w| w[0] - 2.0 * w[1] + w[2]).collect();
            let mut violations = Vec::new();
            let mut mins = Vec::new();
            for (k, d) in diffs.iter().enumerate() {
                mins.push(d.iter().cloned().fold(f64::INFINITY, f64::min));
                violations.extend(
                    d.iter().enumerate().filter(|(_, &v)| v < -tol).map(|(j, &v)| SignViolation { t: ts[j], order: k as i32, value: v }),
                );
            }
            mins.push(log2.iter().cloned().fold(f64::INFINITY, f64::min));
            violations.extend(
                log2.iter().enumerate().filter(|(_, &v)| v < -tol).map(|(j, &v)| SignViolation { t: ts[j], order: -2, value: v }),
            );
            let mut r = base(None, None, Vec::new());
            r.violations = violations;
            r.min_signed_differences = mins;
            Ok(r)
        }
    }
}
