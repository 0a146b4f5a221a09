//! Property suites behind `fracschro verify`.
//!
//! Each suite returns one line per check. A check whose computation fails is
//! reported as failing with the error text, so a suite always completes.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::backward::{
    admissible_corpus, holder_stability_scan, lipschitz_stability_scan, reconstruct_sub, reconstruct_super,
    super_stability_ratio, unit_corpus, BackwardResult, SuperModeMatrix, DEFAULT_DENOM_FLOOR,
};
use crate::calibrate::{es_grid, square_spectrum};
use crate::constants::{FrozenConstants, MinoraRow};
use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::forward::{
    nonphysical_growth_probe, regularity_report, solve_forward, solve_forward_derivative, EvolutionCase,
    EvolutionProblem,
};
use crate::mlf::identities::{derivative_identities, key_formula_check, BoundKind};
use crate::mlf::{i_pow, ml, rgamma_real};
use crate::oracle::{caputo_identity_check, convergence_study, integrate_l1, IntegratorConfig, ModalOde};
use crate::spectral::{ModalState, Spectrum};
use crate::zeros::{
    conjecture_harness, exceptional_times, scan_e_imag_axis, scan_psi, Conjecture, ExceptionalKind, ScanGrid,
    Spacing, DEFAULT_POINTS, ZERO_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bounds,
    Identities,
    Stability,
    Zeros,
    Conjectures,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Self::Bounds, Self::Identities, Self::Stability, Self::Zeros, Self::Conjectures, Self::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bounds => "bounds",
            Self::Identities => "identities",
            Self::Stability => "stability",
            Self::Zeros => "zeros",
            Self::Conjectures => "conjectures",
            Self::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    /// `None` marks an informational line.
    pub pass: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass != Some(false))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Restricts the zero suite to one order.
    pub alpha: Option<f64>,
    pub seed: u64,
    pub constants: FrozenConstants,
}

struct Lines(Vec<CheckLine>);

impl Lines {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (pass, detail) = match f() {
            Ok((p, d)) => (Some(p), d),
            Err(e) => (Some(false), format!("error: {e}")),
        };
        self.0.push(CheckLine { name: name.into(), pass, detail });
    }

    fn info(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<String>) {
        let detail = f().unwrap_or_else(|e| format!("error: {e}"));
        self.0.push(CheckLine { name: name.into(), pass: None, detail });
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut lines = Lines(Vec::new());
    match suite {
        Suite::Identities => identities(&mut lines, opts),
        Suite::Bounds => bounds(&mut lines, opts),
        Suite::Stability => stability(&mut lines, opts),
        Suite::Zeros => zeros(&mut lines, opts),
        Suite::Conjectures => conjectures(&mut lines),
        Suite::Oracle => oracle(&mut lines),
    }
    Ok(SuiteReport { suite, checks: lines.0 })
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

/// Seeded points of the closed disk `|z| <= radius`.
pub fn disk_points(n: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, rng.gen_range(-PI..PI))
        })
        .collect()
}

fn identities(lines: &mut Lines, opts: &VerifyOptions) {
    lines.check("E_{1,1}(z) = exp(z), 200 points |z| <= 5", || {
        let worst = disk_points(200, 5.0, opts.seed)
            .into_iter()
            .map(|z| Ok((ml(1.0, 1.0, z)? - z.exp()).norm() / z.exp().norm()))
            .collect::<Result<Vec<_>>>()?;
        let w = max_of(worst.into_iter());
        Ok((w <= 1e-12, format!("max rel err {w:.2e}")))
    });
    lines.check("E_{2,1}(-t^2) = cos t, t in [0, 20]", || {
        let w = (0..=400)
            .map(|k| {
                let t = 20.0 * k as f64 / 400.0;
                Ok((ml(2.0, 1.0, Complex64::new(-t * t, 0.0))? - t.cos()).norm())
            })
            .collect::<Result<Vec<_>>>()?;
        let w = max_of(w.into_iter());
        Ok((w <= 1e-10, format!("max abs err {w:.2e}")))
    });
    lines.check("E_{a,b}(0) = 1/Gamma(b), 20 pairs", || {
        let mut w = 0.0_f64;
        for i in 0..20 {
            let a = 0.1 + 0.09 * i as f64;
            let b = -1.5 + 0.37 * i as f64;
            w = w.max((ml(a, b, Complex64::new(0.0, 0.0))?.re - rgamma_real(b)).abs());
        }
        Ok((w <= 1e-13, format!("max abs err {w:.2e}")))
    });
    lines.check("key formula, 5 orders x 500 points on [0, 50]", || {
        let mut w = 0.0_f64;
        for a in [0.3, 0.5, 0.61, 0.8, 0.95] {
            for k in 0..500 {
                w = w.max(key_formula_check(a, 50.0 * k as f64 / 499.0)?.abs_err());
            }
        }
        Ok((w <= 1e-9, format!("max abs err {w:.2e}")))
    });
    lines.check("derivative identities, 50 sampled (alpha, omega, t)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xd1);
        let mut w = 0.0_f64;
        for _ in 0..50 {
            let mut a: f64 = rng.gen_range(0.2..1.9);
            if (a - 1.0).abs() < 0.02 {
                a += 0.05;
            }
            let omega = i_pow(-a) * rng.gen_range(0.1..20.0);
            let t = rng.gen_range(0.2..3.0);
            for c in derivative_identities(a, omega, t)? {
                w = w.max(c.rel_err());
            }
        }
        Ok((w <= 1e-5, format!("max rel err {w:.2e}")))
    });
    lines.check("Caputo identity against L1 at 2^12 steps", || {
        let mut w = 0.0_f64;
        for a in [0.3, 0.5, 0.8, 1.2, 1.5, 1.9] {
            let omega = if a < 1.0 { Complex64::new(0.0, -1.0) } else { i_pow(-a) };
            w = w.max(caputo_identity_check(a, omega, 1.0, 1 << 12)?.rel_err());
        }
        Ok((w <= 5e-3, format!("max rel err {w:.2e}")))
    });
}

fn bounds(lines: &mut Lines, opts: &VerifyOptions) {
    let c = &opts.constants;
    // a grid shifted against the calibration grid
    let grid: Vec<f64> = es_grid().windows(2).step_by(4).map(|w| (w[0] * w[1]).sqrt().max(w[1] * 0.5)).collect();
    for row in &c.es {
        for kind in BoundKind::ALL {
            let frozen = match kind {
                BoundKind::Es0 => row.es0,
                BoundKind::Es1 => row.es1,
                BoundKind::Es2 => row.es2,
                BoundKind::Es3 => row.es3,
                BoundKind::Es4 => row.es4,
            };
            let Some(frozen) = frozen else { continue };
            lines.check(format!("{} at alpha={}", kind.name(), row.alpha), || {
                let m = grid.iter().map(|&x| kind.normalized(row.alpha, x)).collect::<Result<Vec<_>>>()?;
                let m = max_of(m.into_iter());
                Ok((m <= frozen, format!("sup {m:.4} <= frozen {frozen:.4}")))
            });
        }
    }
    for (case, alpha) in [(EvolutionCase::Nu1Sub, 0.5), (EvolutionCase::NuAlphaSub, 0.5), (EvolutionCase::NuAlphaSuper, 1.5)] {
        lines.check(format!("regularity {} alpha={alpha}", case.name()), || {
            let sp = Arc::new(Spectrum::new(vec![1.0, 4.0, 9.0], "1,4,9")?);
            let u0 = unit_corpus(&sp, 1, opts.seed)?.remove(0);
            let u1 = case.is_super().then(|| unit_corpus(&sp, 1, opts.seed + 1).map(|mut v| v.remove(0))).transpose()?;
            let p = EvolutionProblem::new(case, alpha, u0, u1, 1.0)?;
            let grid: Vec<f64> = (1..=50).map(|k| k as f64 / 50.0).collect();
            let row = c.es_row(alpha).ok_or_else(|| FrozenConstants::missing(format!("alpha={alpha}")))?;
            let r = regularity_report(&p, 0.0, &grid, Some(row))?;
            let detail = r
                .checks
                .iter()
                .map(|c| match c.bound {
                    Some(b) => format!("{:.3}<={b:.3}", c.measured),
                    None => format!("{:.3}", c.measured),
                })
                .collect::<Vec<_>>()
                .join(" ");
            Ok((r.passed(), detail))
        });
    }
    lines.check("growth of |E_{1.5,1}(-i lambda)|: slope 1/2 in lambda^{2/3}", || {
        let lambdas = [1e2, 1e3, 1e4];
        let xs: Vec<f64> = lambdas.iter().map(|l: &f64| l.powf(2.0 / 3.0)).collect();
        let ys = lambdas.iter().map(|&l| nonphysical_growth_probe(1.5, l, 1.0).map(|p| p.log_modulus)).collect::<Result<Vec<_>>>()?;
        let (slope, _) = linear_fit(&xs, &ys).ok_or_else(|| Error::InvalidParameter("degenerate fit".into()))?;
        Ok(((slope - 0.5).abs() <= 0.05, format!("slope {slope:.5}")))
    });
}

/// Relative error of the round trip `u0 -> u(T) -> u0`.
pub fn sub_round_trip(case: EvolutionCase, alpha: f64, n_modes: usize, seed: u64) -> Result<f64> {
    let sp = square_spectrum(n_modes)?;
    let u0 = unit_corpus(&sp, 1, seed)?.remove(0);
    let p = EvolutionProblem::new(case, alpha, u0.clone(), None, 1.0)?;
    let ut = solve_forward(&p, 1.0)?;
    let back = reconstruct_sub(case, alpha, &ut, 1.0, DEFAULT_DENOM_FLOOR)?;
    Ok(back.u0.linear_combination(Complex64::new(1.0, 0.0), &u0, Complex64::new(-1.0, 0.0))?.norm() / u0.norm())
}

/// Relative error of `(u0, u1) -> (u(T), ∂_t u(T)) -> (u0, u1)`.
pub fn super_round_trip(alpha: f64, n_modes: usize, seed: u64) -> Result<f64> {
    let sp = square_spectrum(n_modes)?;
    let mut c = unit_corpus(&sp, 2, seed)?;
    let (u0, u1) = (c.remove(0), c.remove(0));
    let p = EvolutionProblem::new(EvolutionCase::NuAlphaSuper, alpha, u0.clone(), Some(u1.clone()), 1.0)?;
    let ut = solve_forward(&p, 1.0)?;
    let vt = solve_forward_derivative(&p, 1.0, 1)?;
    let back = reconstruct_super(alpha, &ut, &vt, 1.0, DEFAULT_DENOM_FLOOR)?;
    let one = Complex64::new(1.0, 0.0);
    let e0 = back.u0.linear_combination(one, &u0, -one)?.norm();
    let e1 = back.u1.expect("super").linear_combination(one, &u1, -one)?.norm();
    Ok(e0.hypot(e1) / u0.norm().hypot(u1.norm()))
}

fn minora_for(c: &FrozenConstants, case: EvolutionCase, alpha: f64) -> Result<MinoraRow> {
    c.minora(case, alpha, 1.0).copied().ok_or_else(|| FrozenConstants::missing(format!("{} alpha={alpha}", case.name())))
}

fn stability(lines: &mut Lines, opts: &VerifyOptions) {
    let c = &opts.constants;
    let cases = [
        (EvolutionCase::Nu1Sub, 0.3),
        (EvolutionCase::Nu1Sub, 0.5),
        (EvolutionCase::NuAlphaSub, 0.3),
        (EvolutionCase::NuAlphaSub, 0.5),
        (EvolutionCase::NuAlphaSub, 0.8),
    ];
    for (case, alpha) in cases {
        lines.check(format!("round trip {} alpha={alpha}, 16 modes", case.name()), || {
            let e = sub_round_trip(case, alpha, 16, opts.seed)?;
            Ok((e <= 1e-8, format!("rel err {e:.2e}")))
        });
    }
    for alpha in [1.2, 1.5] {
        lines.check(format!("round trip nu-alpha-super alpha={alpha}, 16 modes"), || {
            let e = super_round_trip(alpha, 16, opts.seed)?;
            Ok((e <= 1e-8, format!("rel err {e:.2e}")))
        });
    }
    lines.check("zero terminal data gives zero initial data", || {
        let sp = square_spectrum(16)?;
        let z = ModalState::zeros(Arc::clone(&sp));
        let a = reconstruct_sub(EvolutionCase::Nu1Sub, 0.5, &z, 1.0, DEFAULT_DENOM_FLOOR)?.u0.is_zero();
        let b = reconstruct_super(1.5, &z, &z, 1.0, DEFAULT_DENOM_FLOOR)?;
        Ok((a && b.u0.is_zero() && b.u1.map_or(false, |v| v.is_zero()), String::new()))
    });
    lines.check("Lipschitz bounds nu1-sub alpha=0.5, 100 states", || {
        let row = minora_for(c, EvolutionCase::Nu1Sub, 0.5)?;
        let es0 = c.es_row(0.5).and_then(|r| r.es0).ok_or_else(|| FrozenConstants::missing("es0 alpha=0.5"))?;
        let sp = square_spectrum(16)?;
        let r = lipschitz_stability_scan(EvolutionCase::Nu1Sub, 0.5, &sp, 1.0, 100, opts.seed)?;
        let (c1, c2) = (1.0 / row.c, es0);
        let ok = r.lipschitz_lower >= c1 && r.lipschitz_upper <= c2;
        Ok((ok, format!("{c1:.4} <= [{:.4}, {:.4}] <= {c2:.4}", r.lipschitz_lower, r.lipschitz_upper)))
    });
    lines.check("Hoelder estimate nu1-sub alpha=0.5, eps=1, M=10, 100 states", || {
        let row = minora_for(c, EvolutionCase::Nu1Sub, 0.5)?;
        let sp = square_spectrum(row.n_modes)?;
        let corpus = admissible_corpus(&sp, 100, opts.seed, 1.0, 10.0)?;
        let r = holder_stability_scan(EvolutionCase::Nu1Sub, 0.5, 1.0, 1.0, 10.0, row.c, &corpus)?;
        Ok((
            r.holder_violations == 0,
            format!("{} violations, fitted exponent {:.3}", r.holder_violations, r.fitted_holder_exponent.unwrap_or(f64::NAN)),
        ))
    });
    for alpha in [1.2, 1.5] {
        lines.check(format!("superdiffusive stability and coefficient bounds alpha={alpha}"), || {
            let row = c.super_row(alpha, 1.0).copied().ok_or_else(|| FrozenConstants::missing(format!("super alpha={alpha}")))?;
            let sp = square_spectrum(row.n_modes)?;
            let corpus = unit_corpus(&sp, 40, opts.seed)?;
            let mut worst = 0.0_f64;
            for pair in corpus.chunks(2) {
                worst = worst.max(super_stability_ratio(alpha, &pair[0], &pair[1], 1.0)?);
            }
            let mut coeff_ok = true;
            for &lambda in sp.eigenvalues() {
                let m = SuperModeMatrix::new(alpha, lambda, 1.0)?;
                for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.7, -0.7)] {
                    let (a, b) = (Complex64::new(a, 0.0), Complex64::new(0.0, b));
                    let (x, y) = m.solve(a, b);
                    let s = a.norm() + b.norm();
                    coeff_ok &= x.norm() <= row.c_u0 * lambda.powf(1.0 - 1.0 / alpha) * s;
                    coeff_ok &= y.norm() <= row.c_u1 * lambda * s;
                }
            }
            Ok((worst <= row.c_stability && coeff_ok, format!("ratio {worst:.4} <= {:.4}", row.c_stability)))
        });
    }
    lines.check("conditioning growth slopes, modes 17..64", || {
        let n = 64;
        let sp = square_spectrum(n)?;
        let ones = ModalState::new(Arc::clone(&sp), vec![Complex64::new(1.0, 0.0); n])?;
        let slope = |r: BackwardResult| r.conditioning_slope_from(17).unwrap_or(f64::NAN);
        let s1 = slope(reconstruct_sub(EvolutionCase::Nu1Sub, 0.5, &ones, 1.0, DEFAULT_DENOM_FLOOR)?);
        let s2 = slope(reconstruct_sub(EvolutionCase::NuAlphaSub, 0.5, &ones, 1.0, DEFAULT_DENOM_FLOOR)?);
        let s3 = slope(reconstruct_super(1.5, &ones, &ones, 1.0, DEFAULT_DENOM_FLOOR)?);
        let ok = s1 <= 1.0 + SLOPE_SLACK && s2 <= 1.0 + SLOPE_SLACK && s3 <= 1.0 - 1.0 / 1.5 + SLOPE_SLACK;
        Ok((ok, format!("nu1 {s1:.3} (<=1), nu-alpha {s2:.3} (<=1), super {s3:.3} (<=1/3)")))
    });
}

/// Allowance on fitted log-log slopes for the oscillating lower-order terms.
const SLOPE_SLACK: f64 = 0.05;

fn zeros(lines: &mut Lines, opts: &VerifyOptions) {
    let c = &opts.constants;
    let e_scan = |lines: &mut Lines, alpha: f64, t_max: f64| {
        lines.check(format!("E_(alpha,1)(it) alpha={alpha} on [-{t_max}, {t_max}]"), || {
            let r = scan_e_imag_axis(alpha, t_max, DEFAULT_POINTS, ZERO_TOL)?;
            let floor = c.zero_floor(alpha).filter(|f| f.t_max == t_max).map(|f| f.floor);
            let floor_ok = floor.map_or(true, |f| r.min_modulus > f);
            let detail = format!(
                "{} zeros, {} suspicious, min |E| {:.3e}{}, R {:.1}",
                r.confirmed_zeros.len(),
                r.suspicious.len(),
                r.min_modulus,
                floor.map(|f| format!(" > floor {f:.3e}")).unwrap_or_default(),
                r.radius_r
            );
            Ok((r.confirmed_zeros.is_empty() && floor_ok, detail))
        });
    };
    let psi_scan = |lines: &mut Lines, alpha: f64| {
        lines.check(format!("psi alpha={alpha} on (0, 200]"), || {
            let r = scan_psi(alpha, 200.0, DEFAULT_POINTS, ZERO_TOL)?;
            Ok((r.confirmed_zeros.is_empty(), format!("{} zeros, min |psi| {:.3e}", r.confirmed_zeros.len(), r.min_modulus)))
        });
    };
    if let Some(a) = opts.alpha {
        if a > 0.0 && a < 1.0 {
            e_scan(lines, a, 100.0);
        } else {
            psi_scan(lines, a);
        }
        return;
    }
    for a in [0.3, 0.5, 0.6, 0.61, 0.7, 0.8, 0.95] {
        e_scan(lines, a, 100.0);
    }
    lines.check("alpha=0.8 key-formula parts change sign, never together", || {
        let r = scan_e_imag_axis(0.8, 50.0, DEFAULT_POINTS, ZERO_TOL)?;
        let ok = r.re_sign_changes >= 1 && r.im_sign_changes >= 1 && r.min_component_max > ZERO_TOL;
        Ok((ok, format!("{} / {} sign changes, min max(|Re|,|Im|) {:.3e}", r.re_sign_changes, r.im_sign_changes, r.min_component_max)))
    });
    for a in [1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7] {
        psi_scan(lines, a);
    }
    lines.check("alpha=1.1 Re psi and Im psi change sign, never together", || {
        let r = scan_psi(1.1, 200.0, DEFAULT_POINTS, ZERO_TOL)?;
        let ok = r.re_sign_changes >= 1 && r.im_sign_changes >= 1 && r.min_component_max > ZERO_TOL;
        Ok((ok, format!("{} / {} sign changes, min max(|Re|,|Im|) {:.3e}", r.re_sign_changes, r.im_sign_changes, r.min_component_max)))
    });
}

fn conjectures(lines: &mut Lines) {
    lines.check("conjecture 1, alpha=0.95, t_max=200", || {
        let g = ScanGrid::new(0.0, 200.0, 2 * DEFAULT_POINTS, Spacing::Linear)?;
        let r = conjecture_harness(Conjecture::NoImaginaryZeros, 0.95, g, ZERO_TOL)?;
        Ok((r.holds(), format!("min |E| {:.3e}, tail certified {:?}", r.min_modulus.unwrap_or(f64::NAN), r.tail_certified)))
    });
    lines.check("conjecture 2, alpha=1.5, t_max=200", || {
        let g = ScanGrid::new(1e-3, 200.0, DEFAULT_POINTS, Spacing::Log)?;
        let r = conjecture_harness(Conjecture::PsiNonvanishing, 1.5, g, ZERO_TOL)?;
        Ok((r.holds(), format!("min |psi| {:.3e}, tail certified {:?}", r.min_modulus.unwrap_or(f64::NAN), r.tail_certified)))
    });
    lines.check("conjecture 3, alpha=0.35, t in [0.1, 40]", || {
        let g = ScanGrid::new(0.1, 40.0, 2000, Spacing::Linear)?;
        let r = conjecture_harness(Conjecture::CompleteMonotonicity, 0.35, g, 1e-8)?;
        Ok((r.holds(), format!("{} violations, minima {:?}", r.violations.len(), r.min_signed_differences.iter().map(|m| format!("{m:.1e}")).collect::<Vec<_>>())))
    });
    lines.check("exceptional-time algebra on synthetic zeros", || {
        let sp = Spectrum::new(vec![1.0, 4.0, 9.0, 16.0], "n^2")?;
        let zs = [0.7, 2.5, 6.0];
        let e = exceptional_times(ExceptionalKind::Upsilon, &zs, &sp, 0.8)?;
        let sup_ok = e.sup() == Some((6.0_f64 / 1.0).powf(1.0 / 0.8));
        let empty = exceptional_times(ExceptionalKind::Lambda, &[], &sp, 1.5)?.times.is_empty();
        Ok((sup_ok && empty && e.accumulates_only_at_zero(), format!("{} times", e.times.len())))
    });
}

/// `(α, λ) -> (case, steps)` of the forward/oracle comparison.
pub fn oracle_pairing(alpha: f64) -> (EvolutionCase, usize) {
    if alpha < 1.0 {
        (EvolutionCase::Nu1Sub, 1 << 12)
    } else {
        (EvolutionCase::NuAlphaSuper, 1 << 13)
    }
}

/// Relative endpoint error of the L1 integration against the closed form
/// at `t = 1` for a single mode with `u0 = 1` (and `u1 = 0`).
pub fn forward_oracle_error(case: EvolutionCase, alpha: f64, lambda: f64, n_steps: usize) -> Result<f64> {
    let sp = Arc::new(Spectrum::new(vec![lambda], "single")?);
    let u0 = ModalState::basis(Arc::clone(&sp), 0)?;
    let u1 = case.is_super().then(|| ModalState::zeros(Arc::clone(&sp)));
    let p = EvolutionProblem::new(case, alpha, u0, u1, 1.0)?;
    let closed = solve_forward(&p, 1.0)?.coeffs()[0];
    let ode = ModalOde::new(case.omega(alpha) * lambda, alpha, Complex64::new(1.0, 0.0), case.is_super().then_some(Complex64::new(0.0, 0.0)))?;
    let l1 = integrate_l1(&ode, &IntegratorConfig::new(n_steps, 1.0)?).last().expect("steps").1;
    Ok((l1 - closed).norm() / closed.norm())
}

pub const ORACLE_ALPHAS: [f64; 6] = [0.3, 0.5, 0.8, 1.2, 1.5, 1.9];
pub const CONVERGENCE_STEPS: [usize; 5] = [256, 512, 1024, 2048, 4096];

fn oracle(lines: &mut Lines) {
    for a in ORACLE_ALPHAS {
        let (case, steps) = oracle_pairing(a);
        for lambda in [1.0, 10.0] {
            lines.check(format!("L1 vs closed form {} alpha={a} lambda={lambda}", case.name()), || {
                let e = forward_oracle_error(case, a, lambda, steps)?;
                Ok((e <= 5e-3, format!("rel err {e:.2e} at {steps} steps")))
            });
        }
    }
    lines.check("nu-alpha-sub pairing at lambda=1", || {
        let mut w = 0.0_f64;
        for a in [0.3, 0.5, 0.8] {
            w = w.max(forward_oracle_error(EvolutionCase::NuAlphaSub, a, 1.0, 1 << 12)?);
        }
        Ok((w <= 5e-3, format!("max rel err {w:.2e}")))
    });
    for a in ORACLE_ALPHAS {
        lines.info(format!("fitted L1 order alpha={a}"), || {
            let (case, _) = oracle_pairing(a);
            let ode = ModalOde::new(case.omega(a), a, Complex64::new(1.0, 0.0), (a > 1.0).then_some(Complex64::new(0.0, 0.0)))?;
            let s = convergence_study(&ode, 1.0, &CONVERGENCE_STEPS)?;
            Ok(format!("order {:.3} (2-alpha = {:.2}), monotone {}", s.fitted_order.unwrap_or(f64::NAN), 2.0 - a, s.is_monotone()))
        });
    }
}
