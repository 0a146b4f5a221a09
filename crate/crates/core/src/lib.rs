//! Mittag-Leffler functions and time-fractional Schrödinger problems
//! `i^ν ∂_t^α u + A u = 0` in the eigenbasis of `A`.

pub mod backward;
pub mod calibrate;
pub mod constants;
pub mod error;
pub mod figures;
pub mod fit;
pub mod forward;
pub mod mlf;
pub mod optimize;
pub mod oracle;
pub mod spectral;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
