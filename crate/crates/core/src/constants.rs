//! Frozen regression constants.
//!
//! The estimates only assert that constants exist. Their values are measured
//! once by [`crate::calibrate`] on fixed grids, inflated by a safety margin,
//! and stored in `data/constants.toml`. Later runs check that nothing
//! exceeds them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::EvolutionCase;

const BUILTIN: &str = include_str!("../data/constants.toml");

/// Suprema of the normalised growth/decay quantities over `x >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EsRow {
    pub alpha: f64,
    pub es0: Option<f64>,
    pub es1: Option<f64>,
    pub es2: Option<f64>,
    pub es3: Option<f64>,
    pub es4: Option<f64>,
}

/// `max_n 1 / (λ_n |E_{α,1}(ωλ_n T^α)|)` on `λ_n = n²`, `n <= n_modes`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinoraRow {
    pub case: EvolutionCase,
    pub alpha: f64,
    pub horizon: f64,
    pub n_modes: usize,
    pub c: f64,
}

/// Superdiffusive backward constants on `λ_n = n²`, `n <= n_modes`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperRow {
    pub alpha: f64,
    pub horizon: f64,
    pub n_modes: usize,
    /// `‖u0‖ + ‖u1‖ <= c_stability (‖u(T)‖_1 + ‖∂_t u(T)‖_1)`
    pub c_stability: f64,
    /// `|u_{0n}| <= c_u0 λ_n^{1-1/α} (|a_n| + |b_n|)`
    pub c_u0: f64,
    /// `|u_{1n}| <= c_u1 λ_n (|a_n| + |b_n|)`
    pub c_u1: f64,
}

/// Lower floor for `min |E_{α,1}(it)|` over `t ∈ [0, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloorRow {
    pub alpha: f64,
    pub t_max: f64,
    pub n_points: usize,
    pub floor: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FrozenConstants {
    /// Upper constants are measured values times `margin`.
    pub margin: f64,
    /// Floors are measured minima times `floor_factor`.
    pub floor_factor: f64,
    #[serde(default)]
    pub es: Vec<EsRow>,
    #[serde(default)]
    pub minora: Vec<MinoraRow>,
    #[serde(default, rename = "super")]
    pub super_backward: Vec<SuperRow>,
    #[serde(default)]
    pub zero_floors: Vec<FloorRow>,
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(1.0)
}

impl FrozenConstants {
    /// The table shipped with the crate.
    pub fn builtin() -> Result<Self> {
        Self::from_toml(BUILTIN)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Constants(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Constants(e.to_string()))
    }

    pub fn es_row(&self, alpha: f64) -> Option<&EsRow> {
        self.es.iter().find(|r| same(r.alpha, alpha))
    }

    pub fn minora(&self, case: EvolutionCase, alpha: f64, horizon: f64) -> Option<&MinoraRow> {
        self.minora.iter().find(|r| r.case == case && same(r.alpha, alpha) && same(r.horizon, horizon))
    }

    pub fn super_row(&self, alpha: f64, horizon: f64) -> Option<&SuperRow> {
        self.super_backward.iter().find(|r| same(r.alpha, alpha) && same(r.horizon, horizon))
    }

    pub fn zero_floor(&self, alpha: f64) -> Option<&FloorRow> {
        self.zero_floors.iter().find(|r| same(r.alpha, alpha))
    }

    /// Error for a missing entry, naming what was looked up.
    pub fn missing(what: impl std::fmt::Display) -> Error {
        Error::Constants(format!("no frozen constant for {what}; run the calibration"))
    }
}
