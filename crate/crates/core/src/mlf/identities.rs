//! Checkable forms of the classical Mittag-Leffler identities and bounds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{i_pow, ml, ml_key_formula_rhs};
use crate::error::{Error, Result};

/// One side-by-side comparison of an identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl IdentityCheck {
    pub fn abs_err(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn rel_err(&self) -> f64 {
        self.abs_err() / self.rhs.norm().max(f64::MIN_POSITIVE)
    }
}

/// Fourth-order central difference of `f` at `t`.
fn central_difference<F>(f: F, t: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (fm2, fm1, fp1, fp2) = (f(t - 2.0 * h)?, f(t - h)?, f(t + h)?, f(t + 2.0 * h)?);
    Ok((fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h))
}

/// Step for differencing `t ↦ g(ω t^α)`: small against both `t` and the
/// oscillation period `|ω|^{-1/α}`.
fn step_for(alpha: f64, omega: Complex64, t: f64) -> f64 {
    let freq = omega.norm().powf(1.0 / alpha).max(1.0);
    1e-3 * t.min(1.0 / freq)
}

/// Finite-difference checks of
///
/// * `d/dt E_{α,1}(ωt^α) = ω t^{α-1} E_{α,α}(ωt^α)`
/// * `d/dt [t E_{α,2}(ωt^α)] = E_{α,1}(ωt^α)`
/// * `d/dt [t^{α-1} E_{α,α}(ωt^α)] = t^{α-2} E_{α,α-1}(ωt^α)`
pub fn derivative_identities(alpha: f64, omega: Complex64, t: f64) -> Result<Vec<IdentityCheck>> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!("derivative identities need t > 0, got {t}")));
    }
    let h = step_for(alpha, omega, t);
    let arg = |s: f64| omega * s.powf(alpha);

    let d1 = central_difference(|s| ml(alpha, 1.0, arg(s)), t, h)?;
    let r1 = omega * t.powf(alpha - 1.0) * ml(alpha, alpha, arg(t))?;

    let d2 = central_difference(|s| Ok(s * ml(alpha, 2.0, arg(s))?), t, h)?;
    let r2 = ml(alpha, 1.0, arg(t))?;

    let d3 = central_difference(|s| Ok(s.powf(alpha - 1.0) * ml(alpha, alpha, arg(s))?), t, h)?;
    let r3 = t.powf(alpha - 2.0) * ml(alpha, alpha - 1.0, arg(t))?;

    Ok(vec![
        IdentityCheck { name: "d/dt E_{a,1}".into(), lhs: d1, rhs: r1 },
        IdentityCheck { name: "d/dt t E_{a,2}".into(), lhs: d2, rhs: r2 },
        IdentityCheck { name: "d/dt t^(a-1) E_{a,a}".into(), lhs: d3, rhs: r3 },
    ])
}

/// `E_{α,1}(-it)` against the key-formula decomposition.
pub fn key_formula_check(alpha: f64, t: f64) -> Result<IdentityCheck> {
    Ok(IdentityCheck {
        name: "key formula".into(),
        lhs: ml(alpha, 1.0, Complex64::new(0.0, -t))?,
        rhs: ml_key_formula_rhs(alpha, t)?,
    })
}

/// The five growth/decay bounds along the rays `arg = -π/2` and
/// `arg = -πα/2`, each written as a quantity that must stay below a
/// constant for all `x = λ t^α >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    /// `|E_{α,1}(-ix)| (1+x)`, `0 < α < 1`
    Es0,
    /// `|E_{α,1}(i^{-α}x)|`
    Es1,
    /// `|E_{α,2}(i^{-α}x)| (1+x)^{min(1,1/α)}`
    Es2,
    /// `|E_{α,α}(i^{-α}x)| (1+x)^{-(1-α)/α}`
    Es3,
    /// `|E_{α,α-1}(i^{-α}x)| (1+x)^{-(2-α)/α}`
    Es4,
}

impl BoundKind {
    pub const ALL: [BoundKind; 5] = [Self::Es0, Self::Es1, Self::Es2, Self::Es3, Self::Es4];

    pub fn name(self) -> &'static str {
        match self {
            Self::Es0 => "es0",
            Self::Es1 => "es1",
            Self::Es2 => "es2",
            Self::Es3 => "es3",
            Self::Es4 => "es4",
        }
    }

    pub fn applies_to(self, alpha: f64) -> bool {
        match self {
            Self::Es0 => alpha > 0.0 && alpha < 1.0,
            _ => alpha > 0.0 && alpha < 2.0 && alpha != 1.0,
        }
    }

    pub fn normalized(self, alpha: f64, x: f64) -> Result<f64> {
        let w = i_pow(-alpha) * x;
        let v = match self {
            Self::Es0 => ml(alpha, 1.0, Complex64::new(0.0, -x))?.norm() * (1.0 + x),
            Self::Es1 => ml(alpha, 1.0, w)?.norm(),
            Self::Es2 => ml(alpha, 2.0, w)?.norm() * (1.0 + x).powf(1f64.min(1.0 / alpha)),
            Self::Es3 => ml(alpha, alpha, w)?.norm() * (1.0 + x).powf(-(1.0 - alpha) / alpha),
            Self::Es4 => ml(alpha, alpha - 1.0, w)?.norm() * (1.0 + x).powf(-(2.0 - alpha) / alpha),
        };
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_at_a_sample() {
        let checks = derivative_identities(0.7, i_pow(-0.7) * 3.0, 0.8).unwrap();
        for c in checks {
            assert!(c.rel_err() < 1e-6, "{} {}", c.name, c.rel_err());
        }
    }

    #[test]
    fn key_formula_sample() {
        assert!(key_formula_check(0.5, 1.0).unwrap().abs_err() < 1e-10);
    }

    #[test]
    fn bounds_are_finite() {
        for b in BoundKind::ALL {
            for a in [0.5, 1.5] {
                if b.applies_to(a) {
                    assert!(b.normalized(a, 10.0).unwrap().is_finite());
                }
            }
        }
    }
}
