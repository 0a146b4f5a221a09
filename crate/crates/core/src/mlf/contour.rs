//! Inversion of the Laplace transform
//!
//! ```text
//! L[t^{β-1} E_{α,β}(z t^α)](s) = s^{α-β} / (s^α - z)
//! ```
//!
//! at `t = 1` along a parabolic contour `s(u) = μ(1 + iu)^2`, with trapezoidal
//! quadrature. The branch points of the transform split the plane into
//! regions bounded by the level sets `(Re s + |s|)/2 = const` (which are
//! exactly these parabolas). For each admissible region the contour
//! parameters `(μ, h, N)` are chosen by balancing discretisation,
//! truncation and round-off errors; the region needing the fewest nodes
//! wins, and the residues of the singularities to the right of that
//! contour are added back.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::asymptotic::{branch_points, exponential_term};

const LOG_EPS: f64 = -36.043_653_389_117_154; // ln(f64::EPSILON)
const MAX_NODES: f64 = 200.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct ContourOutcome {
    pub value: Complex64,
    pub nodes: usize,
    pub est_error: f64,
}

#[derive(Debug, Clone, Copy)]
struct ContourParams {
    mu: f64,
    h: f64,
    n: f64,
}

impl ContourParams {
    const REJECTED: ContourParams = ContourParams { mu: 0.0, h: 0.0, n: f64::INFINITY };
}

/// Parameters for a region bounded by two singularities.
fn bounded_region(phi_j: f64, phi_j1: f64, p: f64, q: f64, log_epsilon: f64) -> ContourParams {
    const FAC: f64 = 1.01;
    let t = 1.0;
    let f_max = (log_epsilon - LOG_EPS).exp();

    let sq_phi_j = phi_j.sqrt();
    let threshold = 2.0 * ((log_epsilon - LOG_EPS) / t).sqrt();
    let sq_phi_j1 = phi_j1.sqrt().min(threshold - sq_phi_j);

    let (sq_bar_j, sq_bar_j1, f_bar) = if p < 1e-14 && q < 1e-14 {
        (sq_phi_j, sq_phi_j1, 1.0)
    } else if p < 1e-14 {
        let f_min = if sq_phi_j > 0.0 {
            FAC * (sq_phi_j / (sq_phi_j1 - sq_phi_j)).powf(q)
        } else {
            FAC
        };
        if f_min >= f_max {
            return ContourParams::REJECTED;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fq = f_bar.powf(-1.0 / q);
        (sq_phi_j, (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq), f_bar)
    } else if q < 1e-14 {
        let f_min = FAC * (sq_phi_j1 / (sq_phi_j1 - sq_phi_j)).powf(p);
        if f_min >= f_max {
            return ContourParams::REJECTED;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / p);
        ((2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp), sq_phi_j1, f_bar)
    } else {
        let f_min = FAC * (sq_phi_j + sq_phi_j1) / (sq_phi_j1 - sq_phi_j).powf(p.max(q));
        if f_min >= f_max {
            return ContourParams::REJECTED;
        }
        let f_min = f_min.max(1.5);
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / p);
        let fq = f_bar.powf(-1.0 / q);
        let w = -phi_j1 * t / log_epsilon;
        let den = 2.0 + w - (1.0 + w) * fp + fq;
        let bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
        let bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
        (bar_j, bar_j1, f_bar)
    };

    let log_epsilon = log_epsilon - f_bar.ln();
    let w = -sq_bar_j1 * sq_bar_j1 * t / log_epsilon;
    let mu = (((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w)).powi(2);
    let h = -2.0 * PI / log_epsilon * (sq_bar_j1 - sq_bar_j) / ((1.0 + w) * sq_bar_j + sq_bar_j1);
    let n = ((1.0 - log_epsilon / t / mu).sqrt() / h).ceil();
    if !(mu > 0.0 && h > 0.0 && n.is_finite()) {
        return ContourParams::REJECTED;
    }
    ContourParams { mu, h, n }
}

/// Parameters for the unbounded region to the right of the last singularity.
fn unbounded_region(phi_j: f64, p: f64, log_epsilon: f64) -> ContourParams {
    let t = 1.0;
    let sq_phi_j = phi_j.sqrt();
    let mut phibar = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sq_phibar = phibar.sqrt();

    let (f_min, f_max, f_tar): (f64, f64, f64) = (1.0, 10.0, 5.0);
    let mut n;
    let mut a;
    let mut sq_mu;
    let mut iterations = 0;
    loop {
        let phi_t = phibar * t;
        let log_eps_phi_t = log_epsilon / phi_t;
        n = (phi_t / PI * (1.0 - 1.5 * log_eps_phi_t + (1.0 - 2.0 * log_eps_phi_t).sqrt())).ceil();
        a = PI * n / phi_t;
        sq_mu = sq_phibar * (4.0 - a).abs() / (7.0 - (1.0 + 12.0 * a).sqrt()).abs();
        let fbar = ((sq_phibar - sq_phi_j) / sq_mu).powf(-p);
        iterations += 1;
        if p < 1e-14 || (f_min < fbar && fbar < f_max) || iterations > 100 {
            break;
        }
        sq_phibar = f_tar.powf(-1.0 / p) * sq_mu + sq_phi_j;
        phibar = sq_phibar * sq_phibar;
    }
    let mut mu = sq_mu * sq_mu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * (1.0 + 12.0 * a).sqrt()) / (4.0 - a) / n;

    // keep round-off under control
    let threshold = (log_epsilon - LOG_EPS) / t;
    if mu > threshold {
        let q = if p.abs() < 1e-14 { 0.0 } else { f_tar.powf(-1.0 / p) * mu.sqrt() };
        let phibar = (q + phi_j.sqrt()).powi(2);
        if phibar < threshold {
            let w = (LOG_EPS / (LOG_EPS - log_epsilon)).sqrt();
            let u = (-phibar * t / LOG_EPS).sqrt();
            mu = threshold;
            n = (w * log_epsilon / 2.0 / PI / (u * w - 1.0)).ceil();
            h = (LOG_EPS / (LOG_EPS - log_epsilon)).sqrt() / n;
        } else {
            return ContourParams::REJECTED;
        }
    }
    if !(mu > 0.0 && h > 0.0 && n.is_finite() && n >= 1.0) {
        return ContourParams::REJECTED;
    }
    ContourParams { mu, h, n }
}

#[inline]
fn phi(s: Complex64) -> f64 {
    (s.re + s.norm()) / 2.0
}

/// Evaluate `E_{α,β}(z)` by contour inversion with target accuracy
/// `exp(log_epsilon)`. Returns `None` only when no admissible region exists.
pub(crate) fn laplace_inversion(alpha: f64, beta: f64, z: Complex64, log_epsilon: f64) -> Option<ContourOutcome> {
    let mut poles: Vec<(f64, Complex64)> = branch_points(alpha, z)
        .into_iter()
        .map(|(_, s)| (phi(s), s))
        .filter(|(ph, _)| *ph > 1e-15)
        .collect();
    poles.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut s_star = vec![Complex64::new(0.0, 0.0)];
    let mut phis = vec![0.0];
    for (ph, s) in &poles {
        s_star.push(*s);
        phis.push(*ph);
    }
    let j1 = s_star.len();
    let mut p = vec![(-2.0 * (alpha - beta + 1.0)).max(0.0)];
    p.extend(std::iter::repeat(1.0).take(j1 - 1));
    let mut q = vec![1.0; j1 - 1];
    q.push(f64::INFINITY);
    phis.push(f64::INFINITY);

    let mut log_epsilon = log_epsilon;
    let t = 1.0;
    let (best_region, params) = loop {
        let admissible: Vec<usize> = (0..j1)
            .filter(|&j| phis[j] < (log_epsilon - LOG_EPS) / t && phis[j] < phis[j + 1])
            .collect();
        if admissible.is_empty() {
            return None;
        }
        let candidates: Vec<(usize, ContourParams)> = admissible
            .iter()
            .map(|&j| {
                let params = if j < j1 - 1 {
                    bounded_region(phis[j], phis[j + 1], p[j], q[j], log_epsilon)
                } else {
                    unbounded_region(phis[j], p[j], log_epsilon)
                };
                (j, params)
            })
            .collect();
        let best = candidates
            .iter()
            .copied()
            .min_by(|a, b| a.1.n.total_cmp(&b.1.n))
            .expect("non-empty");
        if best.1.n > MAX_NODES {
            log_epsilon += std::f64::consts::LN_10;
            if log_epsilon >= 0.0 {
                return None;
            }
        } else {
            break best;
        }
    };

    let n = params.n as i64;
    let mut integral = Complex64::new(0.0, 0.0);
    let mut abs_integrand = 0.0;
    for k in -n..=n {
        let u = params.h * k as f64;
        let s = params.mu * Complex64::new(1.0, u).powi(2);
        let ds = Complex64::new(-2.0 * params.mu * u, 2.0 * params.mu);
        let f = (alpha - beta) * s.ln();
        let f = f.exp() / ((alpha * s.ln()).exp() - z);
        let term = (s * t).exp() * f * ds;
        abs_integrand += term.norm();
        integral += term;
    }
    let scale = params.h / (2.0 * PI);
    let integral = integral * scale / Complex64::i();
    abs_integrand *= scale;

    let mut residues = Complex64::new(0.0, 0.0);
    let mut abs_residues = 0.0;
    for s in &s_star[best_region + 1..] {
        let r = exponential_term(alpha, beta, *s);
        abs_residues += r.norm();
        residues += r;
    }
    let value = integral + residues;
    let est_error = log_epsilon.exp() * value.norm().max(1.0)
        + 8.0 * f64::EPSILON * (abs_integrand + abs_residues);
    Some(ContourOutcome { value, nodes: (2 * n + 1) as usize, est_error })
}
