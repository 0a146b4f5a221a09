//! Measurement of the frozen constants on fixed grids.
//!
//! Every grid here is part of the contract: changing it changes the stored
//! values, so the file `data/constants.toml` must be regenerated.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::backward::{minora_constant, SuperModeMatrix};
use crate::constants::{EsRow, FloorRow, FrozenConstants, MinoraRow, SuperRow};
use crate::error::Result;
use crate::forward::EvolutionCase;
use crate::mlf::identities::BoundKind;
use crate::mlf::ml;
use crate::spectral::Spectrum;

pub const MARGIN: f64 = 1.05;
pub const FLOOR_FACTOR: f64 = 0.5;

pub const ES_ALPHAS: [f64; 16] = [0.3, 0.35, 0.5, 0.6, 0.61, 0.7, 0.8, 0.95, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.9];
pub const MINORA_SUB: [(EvolutionCase, f64); 9] = [
    (EvolutionCase::Nu1Sub, 0.3),
    (EvolutionCase::Nu1Sub, 0.5),
    (EvolutionCase::Nu1Sub, 0.6),
    (EvolutionCase::Nu1Sub, 0.7),
    (EvolutionCase::Nu1Sub, 0.8),
    (EvolutionCase::NuAlphaSub, 0.3),
    (EvolutionCase::NuAlphaSub, 0.5),
    (EvolutionCase::NuAlphaSub, 0.8),
    (EvolutionCase::NuAlphaSub, 0.95),
];
pub const SUPER_ALPHAS: [f64; 4] = [1.2, 1.5, 1.7, 1.9];
pub const FLOOR_ALPHAS: [f64; 7] = [0.3, 0.5, 0.6, 0.61, 0.7, 0.8, 0.95];

pub const CAL_HORIZON: f64 = 1.0;
pub const CAL_MODES: usize = 64;
pub const FLOOR_T_MAX: f64 = 100.0;
pub const FLOOR_POINTS: usize = 10_000;

/// `x = 0` and 2000 log-spaced points on `[1e-3, 1e4]`.
pub fn es_grid() -> Vec<f64> {
    let n = 2000;
    std::iter::once(0.0)
        .chain((0..n).map(|k| 10f64.powf(-3.0 + 7.0 * k as f64 / (n - 1) as f64)))
        .collect()
}

/// `λ_n = n²`, `n = 1..=n_modes`.
pub fn square_spectrum(n_modes: usize) -> Result<Arc<Spectrum>> {
    Ok(Arc::new(Spectrum::new((1..=n_modes).map(|n| (n * n) as f64).collect(), "n^2")?))
}

fn sup_on_grid(kind: BoundKind, alpha: f64, grid: &[f64]) -> Result<Option<f64>> {
    if !kind.applies_to(alpha) {
        return Ok(None);
    }
    let vals = grid.par_iter().map(|&x| kind.normalized(alpha, x)).collect::<Result<Vec<_>>>()?;
    Ok(Some(vals.into_iter().fold(0.0, f64::max)))
}

/// Measured suprema, without margin.
pub fn measure_es(alpha: f64) -> Result<EsRow> {
    let g = es_grid();
    Ok(EsRow {
        alpha,
        es0: sup_on_grid(BoundKind::Es0, alpha, &g)?,
        es1: sup_on_grid(BoundKind::Es1, alpha, &g)?,
        es2: sup_on_grid(BoundKind::Es2, alpha, &g)?,
        es3: sup_on_grid(BoundKind::Es3, alpha, &g)?,
        es4: sup_on_grid(BoundKind::Es4, alpha, &g)?,
    })
}

/// Measured superdiffusive constants, without margin.
pub fn measure_super(alpha: f64, horizon: f64, spectrum: &Spectrum) -> Result<SuperRow> {
    let rows = spectrum
        .eigenvalues()
        .par_iter()
        .map(|&lambda| {
            let m = SuperModeMatrix::new(alpha, lambda, horizon)?;
            let psi = m.determinant().norm();
            let stab = m.inverse_norm() / lambda;
            let u0 = m.e1.norm().max(m.t_e2.norm()) / (psi * lambda.powf(1.0 - 1.0 / alpha));
            let u1 = m.rate_ea.norm().max(m.e1.norm()) / (psi * lambda);
            Ok((stab, u0, u1))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = |f: fn(&(f64, f64, f64)) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    Ok(SuperRow {
        alpha,
        horizon,
        n_modes: spectrum.len(),
        c_stability: std::f64::consts::SQRT_2 * max(|r| r.0),
        c_u0: max(|r| r.1),
        c_u1: max(|r| r.2),
    })
}

/// Uniform grid of `n_points` on `[0, t_max]`.
pub fn floor_grid(t_max: f64, n_points: usize) -> Vec<f64> {
    (0..n_points).map(|k| t_max * k as f64 / (n_points - 1) as f64).collect()
}

/// Measured `min |E_{α,1}(it)|` on [`floor_grid`], without the factor.
pub fn measure_floor(alpha: f64, t_max: f64, n_points: usize) -> Result<f64> {
    let vals = floor_grid(t_max, n_points)
        .par_iter()
        .map(|&t| ml(alpha, 1.0, Complex64::new(0.0, t)).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(vals.into_iter().fold(f64::INFINITY, f64::min))
}

/// Full calibration run with the built-in grids.
pub fn calibrate() -> Result<FrozenConstants> {
    let up = |x: f64| x * MARGIN;
    let es = ES_ALPHAS
        .iter()
        .map(|&a| {
            let r = measure_es(a)?;
            Ok(EsRow {
                alpha: a,
                es0: r.es0.map(up),
                es1: r.es1.map(up),
                es2: r.es2.map(up),
                es3: r.es3.map(up),
                es4: r.es4.map(up),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sp = square_spectrum(CAL_MODES)?;
    let minora = MINORA_SUB
        .iter()
        .map(|&(case, alpha)| {
            Ok(MinoraRow {
                case,
                alpha,
                horizon: CAL_HORIZON,
                n_modes: CAL_MODES,
                c: up(minora_constant(case, alpha, &sp, CAL_HORIZON)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let super_backward = SUPER_ALPHAS
        .iter()
        .map(|&a| {
            let r = measure_super(a, CAL_HORIZON, &sp)?;
            Ok(SuperRow { c_stability: up(r.c_stability), c_u0: up(r.c_u0), c_u1: up(r.c_u1), ..r })
        })
        .collect::<Result<Vec<_>>>()?;
    let zero_floors = FLOOR_ALPHAS
        .iter()
        .map(|&a| {
            Ok(FloorRow {
                alpha: a,
                t_max: FLOOR_T_MAX,
                n_points: FLOOR_POINTS,
                floor: FLOOR_FACTOR * measure_floor(a, FLOOR_T_MAX, FLOOR_POINTS)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrozenConstants { margin: MARGIN, floor_factor: FLOOR_FACTOR, es, minora, super_backward, zero_floors })
}
