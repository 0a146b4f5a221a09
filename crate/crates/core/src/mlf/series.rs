//! Power series `E_{α,β}(z) = Σ z^n / Γ(αn + β)` for small `|z|`.

use num_complex::Complex64;

use super::gamma::rgamma_real;

/// Neumaier-compensated running sum, one per component.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesOutcome {
    pub value: Complex64,
    pub terms: usize,
    pub est_error: f64,
}

pub(crate) fn taylor(alpha: f64, beta: f64, z: Complex64, max_terms: usize) -> SeriesOutcome {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let mut abs_sum = 0.0;
    let mut power = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    let mut terms = 0;
    for n in 0..max_terms {
        let arg = alpha * n as f64 + beta;
        let term = power * rgamma_real(arg);
        re.add(term.re);
        im.add(term.im);
        let mag = term.norm();
        abs_sum += mag;
        terms = n + 1;
        last = mag;
        // past the minimum of Γ the terms decay monotonically for |z| <= 1
        if arg > 2.0 {
            let sum = Complex64::new(re.value(), im.value()).norm();
            if mag <= 0.25 * f64::EPSILON * sum.max(f64::MIN_POSITIVE) {
                break;
            }
        }
        power *= z;
        if power.norm() == 0.0 {
            break;
        }
    }
    let value = Complex64::new(re.value(), im.value());
    let est_error = 2.0 * last * z.norm() + 2.0 * f64::EPSILON * abs_sum;
    SeriesOutcome { value, terms, est_error }
}
