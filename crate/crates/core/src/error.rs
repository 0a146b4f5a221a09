use thiserror::Error;

/// Errors raised by the evaluation, solver and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `exp(z^{1/alpha})` leaves the representable range. The diagnostic
    /// paths (non-physical growth) treat this as an expected outcome.
    #[error("overflow: log-magnitude {log_magnitude:.3} exceeds the f64 range")]
    Overflow { log_magnitude: f64 },

    #[error("precision not reached: estimated error {est_error:e} > tolerance {tol:e}")]
    PrecisionNotReached { est_error: f64, tol: f64 },

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated at row {row}: {msg}")]
    InvariantViolation { row: usize, msg: String },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    /// Some per-mode denominators fell below the floor; `modes` are 1-based.
    #[error("ill-posed horizon: near-zero denominators at modes {modes:?}")]
    IllPosedHorizon { modes: Vec<usize> },

    #[error("admissibility violated: ||u0||_eps = {norm} > M = {bound}")]
    AdmissibilityViolation { norm: f64, bound: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("constants file: {0}")]
    Constants(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
