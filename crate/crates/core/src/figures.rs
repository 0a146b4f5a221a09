//! Data behind the five figures, as long-format `t,series,value` tables.
//!
//! The time ranges are choices of this crate: `[0, 50]` for the
//! imaginary-axis plots, `(0, 200]` log-spaced for ψ, `[0.05, 40]` for the
//! monotonicity plot.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlf::{f_conjecture3, ml, psi_eval};
use crate::zeros::{ScanGrid, Spacing, PSI_T_MIN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    /// `|E_{α,1}(it)|` for α ∈ {0.61, 0.7, 0.8, 0.95}
    Fig1,
    /// `E_{1.6,1}(-t²)` and `t E_{1.6,1.8}(-t²)`
    Fig2,
    /// `|ψ(t)|` for α ∈ {1.2, …, 1.7}
    Fig3,
    /// `Re ψ` and `Im ψ` for α = 1.1
    Fig4,
    /// `f` and its signed derivatives for α = 0.35
    Fig5,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [Self::Fig1, Self::Fig2, Self::Fig3, Self::Fig4, Self::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
        }
    }

    pub fn default_grid(self) -> ScanGrid {
        let g = |a, b, n, s| ScanGrid::new(a, b, n, s).expect("static grid");
        match self {
            Self::Fig1 | Self::Fig2 => g(0.0, 50.0, 1001, Spacing::Linear),
            Self::Fig3 | Self::Fig4 => g(PSI_T_MIN, 200.0, 2000, Spacing::Log),
            Self::Fig5 => g(0.05, 40.0, 800, Spacing::Linear),
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown figure '{s}' (fig1 … fig5)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureRow {
    pub t: f64,
    pub series: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    pub id: FigureId,
    pub rows: Vec<FigureRow>,
}

impl FigureData {
    pub fn series_names(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.series.as_str()) {
                out.push(&r.series);
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "series", "value"])?;
        for r in &self.rows {
            w.write_record([format!("{:e}", r.t), r.series.clone(), format!("{:e}", r.value)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Step of the central differences in the fifth figure.
pub const FIG5_STEP: f64 = 0.02;

fn sample<F>(ts: &[f64], series: &[(String, F)]) -> Result<Vec<FigureRow>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut rows = Vec::with_capacity(ts.len() * series.len());
    for (name, f) in series {
        let vals = ts.par_iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        rows.extend(ts.iter().zip(vals).map(|(&t, value)| FigureRow { t, series: name.clone(), value }));
    }
    Ok(rows)
}

/// `(-1)^k f^{(k)}(t)` for `k = 0..=4` by central differences.
pub fn signed_derivatives(alpha: f64, t: f64, h: f64) -> Result<[f64; 5]> {
    let f = |s: f64| f_conjecture3(alpha, s);
    let (m2, m1, c, p1, p2) = (f(t - 2.0 * h)?, f(t - h)?, f(t)?, f(t + h)?, f(t + 2.0 * h)?);
    let d1 = (p1 - m1) / (2.0 * h);
    let d2 = (p1 - 2.0 * c + m1) / (h * h);
    let d3 = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h);
    let d4 = (p2 - 4.0 * p1 + 6.0 * c - 4.0 * m1 + m2) / (h * h * h * h);
    Ok([c, -d1, d2, -d3, d4])
}

pub fn figure(id: FigureId, grid: &ScanGrid) -> Result<FigureData> {
    let ts = grid.points();
    type Series = Vec<(String, Box<dyn Fn(f64) -> Result<f64> + Sync>)>;
    let series: Series = match id {
        FigureId::Fig1 => [0.61, 0.7, 0.8, 0.95]
            .into_iter()
            .map(|a| {
                let f: Box<dyn Fn(f64) -> Result<f64> + Sync> =
                    Box::new(move |t| ml(a, 1.0, Complex64::new(0.0, t)).map(|v| v.norm()));
                (format!("alpha={a}"), f)
            })
            .collect(),
        FigureId::Fig2 => vec![
            ("E_{1.6,1}(-t^2)".to_string(), Box::new(|t: f64| ml(1.6, 1.0, Complex64::new(-t * t, 0.0)).map(|v| v.re))),
            ("t*E_{1.6,1.8}(-t^2)".to_string(), Box::new(|t: f64| ml(1.6, 1.8, Complex64::new(-t * t, 0.0)).map(|v| t * v.re))),
        ],
        FigureId::Fig3 => [1.2, 1.3, 1.4, 1.5, 1.6, 1.7]
            .into_iter()
            .map(|a| {
                let f: Box<dyn Fn(f64) -> Result<f64> + Sync> = Box::new(move |t| psi_eval(a, t).map(|v| v.norm()));
                (format!("alpha={a}"), f)
            })
            .collect(),
        FigureId::Fig4 => vec![
            ("Re psi".to_string(), Box::new(|t: f64| psi_eval(1.1, t).map(|v| v.re))),
            ("Im psi".to_string(), Box::new(|t: f64| psi_eval(1.1, t).map(|v| v.im))),
        ],
        FigureId::Fig5 => {
            let names = ["f", "-f'", "f''", "-f'''", "f''''"];
            names
                .iter()
                .enumerate()
                .map(|(k, n)| {
                    let f: Box<dyn Fn(f64) -> Result<f64> + Sync> =
                        Box::new(move |t| signed_derivatives(0.35, t, FIG5_STEP).map(|d| d[k]));
                    (n.to_string(), f)
                })
                .collect()
        }
    };
    Ok(FigureData { id, rows: sample(&ts, &series)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in FigureId::ALL {
            assert_eq!(f.name().parse::<FigureId>().unwrap(), f);
        }
        assert!("fig9".parse::<FigureId>().is_err());
    }

    #[test]
    fn small_grids_have_the_expected_series() {
        let g = ScanGrid::new(0.0, 5.0, 11, Spacing::Linear).unwrap();
        let d = figure(FigureId::Fig1, &g).unwrap();
        assert_eq!(d.series_names().len(), 4);
        assert_eq!(d.rows.len(), 44);
        assert!(d.rows.iter().all(|r| r.value.is_finite()));
    }
}
