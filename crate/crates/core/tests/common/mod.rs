//! Test-only oracles shared by the integration suites.
#![allow(dead_code)]

use num_complex::Complex64;
use rug::Float;

/// Exact `num/den` representation of a short decimal such as `0.3` or `1.5`.
pub fn rational(x: f64) -> (i64, i64) {
    for den in 1..=1000_i64 {
        let num = (x * den as f64).round();
        if num / den as f64 == x {
            return (num as i64, den);
        }
    }
    panic!("{x} has no small rational representation");
}

fn is_nonpositive_integer(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

fn rgamma_direct(x: &Float, prec: u32) -> Float {
    if is_nonpositive_integer(x) {
        Float::with_val(prec, 0)
    } else {
        Float::with_val(prec, x.gamma_ref()).recip()
    }
}

/// `E_{α,β}(z)` by plain power-series summation in MPFR arithmetic.
///
/// `α` and `β` must be short decimals: with `α = a/b` the reciprocal gammas
/// follow `1/Γ(x + a) = 1/(Γ(x) x (x+1) … (x+a-1))` along residue classes
/// mod `b`, so only `b` gamma evaluations are needed. The working precision
/// covers the largest term `~exp(|z|^{1/α})` plus 160 bits.
pub fn ml_taylor_mp(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let (a, b) = rational(alpha);
    let (c, d) = rational(beta);
    let growth_bits = z.norm().powf(1.0 / alpha) / std::f64::consts::LN_2;
    let prec = (growth_bits.ceil() as u32).saturating_add(192).max(256);

    let arg = |n: i64| Float::with_val(prec, a * n) / b + Float::with_val(prec, c) / d;
    let mut rgammas: Vec<Float> = Vec::new();

    let zr = Float::with_val(prec, z.re);
    let zi = Float::with_val(prec, z.im);
    let mut pr = Float::with_val(prec, 1);
    let mut pi = Float::with_val(prec, 0);
    let mut sr = Float::with_val(prec, 0);
    let mut si = Float::with_val(prec, 0);
    let mut prev_exp = i64::MAX;

    for n in 0_i64.. {
        let x = arg(n);
        let rg = if n < b {
            rgamma_direct(&x, prec)
        } else {
            let base = &rgammas[(n - b) as usize];
            let x_base = arg(n - b);
            if base.is_zero() {
                rgamma_direct(&x, prec)
            } else {
                let mut prod = Float::with_val(prec, 1);
                for j in 0..a {
                    prod *= Float::with_val(prec, &x_base + j);
                }
                Float::with_val(prec, base / &prod)
            }
        };
        let tr = Float::with_val(prec, &pr * &rg);
        let ti = Float::with_val(prec, &pi * &rg);
        sr += &tr;
        si += &ti;
        rgammas.push(rg);

        let mag = Float::with_val(prec, tr.abs_ref()).max(&Float::with_val(prec, ti.abs_ref()));
        let exp = if mag.is_zero() { i64::MIN } else { mag.get_exp().unwrap() as i64 };
        if x > 2 && exp < -220 && exp <= prev_exp {
            break;
        }
        if n > 0 || !mag.is_zero() {
            prev_exp = exp;
        }

        let nr = Float::with_val(prec, &pr * &zr) - Float::with_val(prec, &pi * &zi);
        let ni = Float::with_val(prec, &pr * &zi) + Float::with_val(prec, &pi * &zr);
        pr = nr;
        pi = ni;
        if pr.is_zero() && pi.is_zero() {
            break;
        }
    }
    Complex64::new(sr.to_f64(), si.to_f64())
}

/// Worst-case error measure used across the suites: absolute below modulus
/// one, relative above.
pub fn scaled_err(value: Complex64, reference: Complex64) -> f64 {
    (value - reference).norm() / reference.norm().max(1.0)
}
