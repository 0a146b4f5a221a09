//! Gamma function on the real line and in the complex plane.
//!
//! Lanczos approximation (g = 7, nine coefficients) for `Re z >= 1/2`, and
//! the reflection formula `Γ(z)Γ(1-z) = π / sin(πz)` for the left half
//! plane, which is where the negative arguments `Γ(β - αk)` of the
//! asymptotic expansions live.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// True when `x` is a pole of Γ (zero or a negative integer).
#[inline]
pub fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.trunc()
}

/// `sin(πx)` with exact argument reduction, so that zeros land on the
/// integers instead of at `sin(π·fl(x))`.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// Exact factorial for positive integer arguments up to 171.
fn integer_gamma(x: f64) -> Option<f64> {
    if x >= 1.0 && x <= 171.0 && x == x.trunc() {
        Some((1..x as u32).fold(1.0, |acc, k| acc * k as f64))
    } else {
        None
    }
}

fn lanczos_real(x: f64) -> f64 {
    if let Some(g) = integer_gamma(x) {
        return g;
    }
    let z = x - 1.0;
    let acc = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64));
    let t = z + LANCZOS_G + 0.5;
    // split the power so that t^(z+1/2) does not overflow before e^-t is applied
    let half = t.powf((z + 0.5) / 2.0);
    SQRT_2PI * half * (-t).exp() * half * acc
}

/// Γ(x) for real `x`.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidParameter("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * lanczos_real(1.0 - x)))
    } else {
        Ok(lanczos_real(x))
    }
}

/// 1/Γ(x) for real `x`; zero at the poles, which is the convention that
/// drops the corresponding terms of the series and asymptotic expansions.
pub fn rgamma_real(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * lanczos_real(1.0 - x) / PI
    } else {
        let g = lanczos_real(x);
        if g.is_infinite() {
            0.0
        } else {
            1.0 / g
        }
    }
}

fn lanczos_complex(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let acc = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS_COEFFS[0], 0.0), |acc, (i, c)| {
            acc + c / (z + (i + 1) as f64)
        });
    let t = z + LANCZOS_G + 0.5;
    SQRT_2PI * ((z + 0.5) * t.ln() - t).exp() * acc
}

/// Γ(z) for complex `z`. Real inputs take the real-line path.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma of non-finite {z}")));
    }
    if z.im == 0.0 {
        return gamma_real(z.re).map(|g| Complex64::new(g, 0.0));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI / (s * lanczos_complex(1.0 - z)))
    } else {
        Ok(lanczos_complex(z))
    }
}
