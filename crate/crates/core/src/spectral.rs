//! The operator `A` through its spectrum, and states as coefficient vectors
//! in the (implicit) orthonormal eigenbasis.
//!
//! Every mode evolves independently under the equations of this crate, so a
//! truncated spectrum is an exact sub-problem rather than an approximation.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered positive eigenvalues `0 < λ_1 <= λ_2 <= … <= λ_N` of `-A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    label: String,
}

impl Spectrum {
    /// Validates positivity and ordering. Rows in errors are 1-based.
    pub fn new(eigenvalues: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvariantViolation { row: 0, msg: "spectrum is empty".into() });
        }
        for (i, &lambda) in eigenvalues.iter().enumerate() {
            if !(lambda.is_finite() && lambda > 0.0) {
                return Err(Error::InvariantViolation {
                    row: i + 1,
                    msg: format!("eigenvalue {lambda} is not positive"),
                });
            }
            if i > 0 && lambda < eigenvalues[i - 1] {
                return Err(Error::InvariantViolation {
                    row: i + 1,
                    msg: format!("eigenvalue {lambda} is smaller than its predecessor {}", eigenvalues[i - 1]),
                });
            }
        }
        Ok(Self { eigenvalues, label: label.into() })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// The same spectrum with further eigenvalues appended.
    pub fn extended(&self, more: &[f64]) -> Result<Self> {
        let mut eigenvalues = self.eigenvalues.clone();
        eigenvalues.extend_from_slice(more);
        Self::new(eigenvalues, self.label.clone())
    }

    /// One eigenvalue per line, optional header `lambda`. Line numbers in
    /// errors count from 1 and include the header.
    pub fn from_reader<R: Read>(reader: R, label: impl Into<String>) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let mut eigenvalues = Vec::new();
        let mut rows = Vec::new();
        for (i, record) in csv.records().enumerate() {
            let record = record?;
            let line = record.position().map_or(i + 1, |p| p.line() as usize);
            if record.len() != 1 {
                return Err(Error::Parse { line, msg: format!("expected one field, found {}", record.len()) });
            }
            let field = &record[0];
            if i == 0 && field.eq_ignore_ascii_case("lambda") {
                continue;
            }
            let lambda: f64 = field.parse().map_err(|_| Error::Parse { line, msg: format!("not a number: {field:?}") })?;
            eigenvalues.push(lambda);
            rows.push(line);
        }
        // report offending rows by their line in the file
        Self::new(eigenvalues, label).map_err(|e| match e {
            Error::InvariantViolation { row, msg } if row > 0 => Error::InvariantViolation { row: rows[row - 1], msg },
            other => other,
        })
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut csv = csv::Writer::from_writer(writer);
        csv.write_record(["lambda"])?;
        for lambda in &self.eigenvalues {
            csv.write_record([format!("{lambda:e}")])?;
        }
        csv.flush()?;
        Ok(())
    }
}

/// `λ_n = (nπ/L)^2`, `n = 1..=n_modes`: the Dirichlet Laplacian on `(0, L)`.
pub fn dirichlet_laplacian_1d(length: f64, n_modes: usize) -> Result<Spectrum> {
    if !(length > 0.0 && length.is_finite()) || n_modes == 0 {
        return Err(Error::InvalidParameter(format!("need L > 0 and n_modes >= 1, got L = {length}, n = {n_modes}")));
    }
    let k = std::f64::consts::PI / length;
    let eigenvalues = (1..=n_modes).map(|n| (n as f64 * k).powi(2)).collect();
    Spectrum::new(eigenvalues, format!("dirichlet_laplacian_1d(L={length})"))
}

/// Reads a spectrum CSV (see [`Spectrum::from_reader`]).
pub fn spectrum_from_file(path: impl AsRef<Path>) -> Result<Spectrum> {
    let path = path.as_ref();
    Spectrum::from_reader(File::open(path)?, path.display().to_string())
}

/// Index `s` of the scale `H_s` with norm `(Σ λ_n^{2s} |c_n|^2)^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SobolevIndex(f64);

impl SobolevIndex {
    pub const L2: SobolevIndex = SobolevIndex(0.0);

    pub fn new(s: f64) -> Result<Self> {
        if s.is_finite() {
            Ok(Self(s))
        } else {
            Err(Error::InvalidParameter(format!("Sobolev index {s} is not finite")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Coefficients `⟨u, φ_n⟩` of a state with respect to a shared spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalState {
    spectrum: Arc<Spectrum>,
    coeffs: Vec<Complex64>,
}

impl ModalState {
    pub fn new(spectrum: Arc<Spectrum>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != spectrum.len() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients for a spectrum of {} modes",
                coeffs.len(),
                spectrum.len()
            )));
        }
        if let Some(n) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidParameter(format!("coefficient {} is not finite", n + 1)));
        }
        Ok(Self { spectrum, coeffs })
    }

    pub fn zeros(spectrum: Arc<Spectrum>) -> Self {
        let coeffs = vec![Complex64::new(0.0, 0.0); spectrum.len()];
        Self { spectrum, coeffs }
    }

    /// The eigenvector `φ_n`, with `n` counted from 0.
    pub fn basis(spectrum: Arc<Spectrum>, n: usize) -> Result<Self> {
        if n >= spectrum.len() {
            return Err(Error::InvalidParameter(format!("mode {n} out of range")));
        }
        let mut state = Self::zeros(spectrum);
        state.coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients paired with their eigenvalues.
    pub fn modes(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.spectrum.eigenvalues().iter().copied().zip(self.coeffs.iter().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `(Σ λ_n^{2s} |c_n|^2)^{1/2}`, accumulated with rescaling so that
    /// large weights do not overflow the squares.
    pub fn hs_norm(&self, s: SobolevIndex) -> f64 {
        let s = s.value();
        let weighted: Vec<f64> = self.modes().map(|(lambda, c)| lambda.powf(s) * c.norm()).collect();
        scaled_l2(&weighted)
    }

    /// Plain norm, `s = 0`.
    pub fn norm(&self) -> f64 {
        self.hs_norm(SobolevIndex::L2)
    }

    /// `(-A)^s u`: coefficient-wise multiplication by `λ_n^s`.
    pub fn apply_operator_power(&self, s: f64) -> Self {
        self.map_modes(|lambda, c| c * lambda.powf(s))
    }

    /// New state on the same spectrum with `c_n ↦ f(λ_n, c_n)`.
    pub fn map_modes<F: Fn(f64, Complex64) -> Complex64>(&self, f: F) -> Self {
        let coeffs = self.modes().map(|(lambda, c)| f(lambda, c)).collect();
        Self { spectrum: Arc::clone(&self.spectrum), coeffs }
    }

    /// `a·self + b·other`; both states must share the same spectrum values.
    pub fn linear_combination(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.spectrum.eigenvalues() != other.spectrum.eigenvalues() {
            return Err(Error::InvalidParameter("states live on different spectra".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| a * x + b * y).collect();
        Ok(Self { spectrum: Arc::clone(&self.spectrum), coeffs })
    }

    pub fn scaled(&self, a: f64) -> Self {
        self.map_modes(|_, c| c * a)
    }

    /// Zero-padded onto a longer spectrum that starts with this one.
    pub fn padded(&self, spectrum: Arc<Spectrum>) -> Result<Self> {
        if spectrum.len() < self.len() || spectrum.eigenvalues()[..self.len()] != *self.spectrum.eigenvalues() {
            return Err(Error::InvalidParameter("target spectrum does not extend the current one".into()));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(spectrum.len(), Complex64::new(0.0, 0.0));
        Ok(Self { spectrum, coeffs })
    }

    /// Lines `re,im`, optional header `re,im`.
    pub fn from_reader<R: Read>(reader: R, spectrum: Arc<Spectrum>) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
        let mut coeffs = Vec::new();
        for (i, record) in csv.records().enumerate() {
            let record = record.map_err(|e| Error::Parse {
                line: e.position().map_or(i + 1, |p| p.line() as usize),
                msg: e.to_string(),
            })?;
            let line = record.position().map_or(i + 1, |p| p.line() as usize);
            if record.len() != 2 {
                return Err(Error::Parse { line, msg: format!("expected re,im, found {} fields", record.len()) });
            }
            if i == 0 && &record[0] == "re" && &record[1] == "im" {
                continue;
            }
            let parse = |f: &str| f.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("not a number: {f:?}") });
            coeffs.push(Complex64::new(parse(&record[0])?, parse(&record[1])?));
        }
        Self::new(spectrum, coeffs)
    }

    pub fn from_file(path: impl AsRef<Path>, spectrum: Arc<Spectrum>) -> Result<Self> {
        Self::from_reader(File::open(path)?, spectrum)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut csv = csv::Writer::from_writer(writer);
        csv.write_record(["re", "im"])?;
        for c in &self.coeffs {
            csv.write_record([format!("{:e}", c.re), format!("{:e}", c.im)])?;
        }
        csv.flush()?;
        Ok(())
    }
}

/// Euclidean norm of non-negative magnitudes without intermediate overflow.
pub(crate) fn scaled_l2(values: &[f64]) -> f64 {
    let scale = values.iter().cloned().fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * values.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}
