//! L1 discretisation of the Caputo derivative on a uniform grid.
//!
//! For `0 < α < 1` the integrand `y'` is replaced by the slope of the
//! piecewise-linear interpolant of `y`,
//!
//! ```text
//! D^α y(t_n) ≈ h^{-α}/Γ(2-α) Σ_{k=1..n} b_{n-k} (y_k - y_{k-1}),   b_j = (j+1)^{1-α} - j^{1-α}.
//! ```
//!
//! For `1 < α < 2`, `D^α y = D^{α-1} y'` and the same construction is
//! applied to the velocity `v = y'`:
//!
//! ```text
//! D^α y(t_n) ≈ h^{1-α}/Γ(3-α) Σ_{k=1..n} b_{n-k} (v_k - v_{k-1}),   b_j = (j+1)^{2-α} - j^{2-α},
//! ```
//!
//! where `h(v_k - v_{k-1})` are the second differences of `y`. Working with
//! nodal velocities keeps the mass of the singular `y'' ~ t^{α-2}` on the
//! first interval exact.
//!
//! Nothing here touches the Mittag-Leffler evaluator.

use num_complex::Complex64;

fn weights(alpha: f64, n: usize) -> Vec<f64> {
    let p = if alpha < 1.0 { 1.0 - alpha } else { 2.0 - alpha };
    (0..n).map(|j| (j as f64 + 1.0).powf(p) - (j as f64).powf(p)).collect()
}

/// `h^{-γ}/Γ(2-γ)` for the fractional part `γ = α - ⌊α⌋`.
fn prefactor(alpha: f64, h: f64) -> f64 {
    let gamma = if alpha < 1.0 { alpha } else { alpha - 1.0 };
    h.powf(-gamma) / libm::tgamma(2.0 - gamma)
}

/// L1 approximation of `D^α y` at the last node of a uniform grid from
/// `t = 0` with step `h`. `samples` holds `y` for `α < 1` and `y'` for
/// `α > 1`.
pub fn caputo_l1(alpha: f64, h: f64, samples: &[Complex64]) -> Complex64 {
    let n = samples.len() - 1;
    let b = weights(alpha, n);
    let sum: Complex64 = (1..=n).map(|k| b[n - k] * (samples[k] - samples[k - 1])).sum();
    prefactor(alpha, h) * sum
}

/// Implicit L1 time stepping of `D^α y = ω y`; returns `y_0, …, y_N`.
/// For `α > 1` the velocity is a second unknown and `y` follows from the
/// trapezoidal rule.
pub(crate) fn step(alpha: f64, omega: Complex64, y0: Complex64, y1: Complex64, h: f64, n_steps: usize) -> Vec<Complex64> {
    let b = weights(alpha, n_steps);
    let mut y = Vec::with_capacity(n_steps + 1);
    y.push(y0);
    // increments of the differentiated quantity, d[k-1] for interval k
    let mut d: Vec<Complex64> = Vec::with_capacity(n_steps);
    if alpha < 1.0 {
        let c = prefactor(alpha, h);
        let denom = c * b[0] - omega;
        for n in 1..=n_steps {
            let history: Complex64 = (1..n).map(|k| b[n - k] * d[k - 1]).sum();
            let yn = (c * b[0] * y[n - 1] - c * history) / denom;
            d.push(yn - y[n - 1]);
            y.push(yn);
        }
    } else {
        let c = prefactor(alpha, h);
        let denom = c * b[0] - 0.5 * h * omega;
        let mut v = y1;
        for n in 1..=n_steps {
            let history: Complex64 = (1..n).map(|k| b[n - k] * d[k - 1]).sum();
            let vn = (c * b[0] * v - c * history + omega * (y[n - 1] + 0.5 * h * v)) / denom;
            let yn = y[n - 1] + 0.5 * h * (v + vn);
            d.push(vn - v);
            v = vn;
            y.push(yn);
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_data_have_exact_derivatives() {
        // the piecewise-linear interpolant is exact on linear samples
        let h = 0.01;
        let n = 100;
        let t = h * n as f64;
        let lin: Vec<Complex64> = (0..=n).map(|k| Complex64::new(k as f64 * h, 0.0)).collect();
        let a = 0.4;
        let exact = t.powf(1.0 - a) / libm::tgamma(2.0 - a);
        assert!((caputo_l1(a, h, &lin).re - exact).abs() < 1e-12 * exact);
        // y = t^2 has y' = 2t, linear again
        let vel: Vec<Complex64> = lin.iter().map(|v| 2.0 * v).collect();
        let a = 1.6;
        let exact = 2.0 * t.powf(2.0 - a) / libm::tgamma(3.0 - a);
        assert!((caputo_l1(a, h, &vel).re - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn stepping_satisfies_the_discrete_equation() {
        let omega = Complex64::new(-0.3, -2.0);
        let h = 1.0 / 64.0;
        let y = step(0.6, omega, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), h, 64);
        for n in [1, 5, 64] {
            assert!((caputo_l1(0.6, h, &y[..=n]) - omega * y[n]).norm() < 1e-11, "n={n}");
        }
    }
}
