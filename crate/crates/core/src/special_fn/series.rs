//! Power series of the shape
//!
//! ```text
//! S(z) = sum_k w_k z^(k+e) Gamma(rho (k+1)) sin(pi omega (k+1)) / (k+e)!
//! ```
//!
//! with `0 < rho < 1`, `e` in {0, 1} and `w_k` equal to 1 for even `k` and to
//! a fixed weight for odd `k`. The generalized Airy function, the Fresnel
//! pseudo-density, its antiderivative, the subordinated density and the
//! Wright function on the line `(-theta, 1 - theta)` are all of this form.
//!
//! The terms grow like `exp(c |z|^(1/(1-rho)))` before decaying, so the sum
//! is accumulated in double-double and the evaluator refuses arguments whose
//! largest term exceeds [`GUARD`].

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Largest admissible term magnitude. With about 31 significant digits in the
/// accumulator this keeps the absolute rounding error near `1e-16`.
pub(crate) const GUARD: f64 = 1e15;

/// Hard cap on the number of terms.
pub(crate) const MAX_TERMS: usize = 10_000;

/// Terms below this (relative to the guard scale) are treated as zero when
/// sizing the coefficient table.
const NEGLIGIBLE_LN: f64 = -85.0;

#[derive(Clone, Debug)]
pub(crate) struct GammaSeries {
    /// `ratios[0] = m_0`, `ratios[k] = m_k / m_{k-1}` with
    /// `m_k = Gamma(rho (k+1)) / (k+e)!`.
    ratios: Vec<Dd>,
    /// Weighted phase factors `w_k sin(pi omega (k+1))`.
    phases: Vec<Dd>,
    shift: u32,
    /// Largest `|z|` for which no term exceeds the guard.
    z_max: f64,
    /// True when the table was cut by the term cap rather than by decay.
    truncated: bool,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SeriesValue {
    pub sum: Dd,
}

impl GammaSeries {
    pub fn new(rho: Dd, omega: Dd, odd_weight: f64, shift: u32) -> Result<Self> {
        if !(rho.hi > 0.0 && rho.hi < 1.0) {
            return Err(Error::Domain(format!("series rate must lie in (0, 1), got {}", rho.hi)));
        }
        let ln_guard = GUARD.ln();
        let mut ratios = Vec::new();
        let mut phases = Vec::new();
        let mut prev_lg = Dd::ZERO;
        let mut ln_m = 0.0f64;
        let mut z_max = f64::INFINITY;
        let mut truncated = true;
        for k in 0..=MAX_TERMS {
            let kf = k as f64;
            let arg = rho.mul_f64(kf + 1.0);
            let lg = arg.ln_gamma();
            let ratio = if k == 0 {
                lg.exp()
            } else {
                (lg - prev_lg).exp().div_f64(kf + shift as f64)
            };
            ln_m += ratio.hi.ln();
            prev_lg = lg;
            ratios.push(ratio);
            let w = if k % 2 == 1 { odd_weight } else { 1.0 };
            phases.push(omega.mul_f64(kf + 1.0).sin_pi().mul_f64(w));

            // terms carry z^(k+e)
            let power = kf + shift as f64;
            if power > 0.0 {
                z_max = z_max.min(((ln_guard - ln_m) / power).exp());
            }
            if k >= 2 && z_max.is_finite() && ln_m + power * z_max.ln() < NEGLIGIBLE_LN && ratio.hi < 1.0 / z_max {
                truncated = false;
                break;
            }
        }
        Ok(GammaSeries { ratios, phases, shift, z_max, truncated })
    }

    /// Largest `|z|` inside the working range.
    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    /// Sum the series at `z`, stopping once the remaining tail is provably
    /// below `tol` (in series units).
    pub fn eval(&self, z: Dd, tol: f64) -> Result<SeriesValue> {
        let az = z.hi.abs();
        let mut p = self.ratios[0];
        if self.shift == 1 {
            p = p * z;
        }
        let mut sum = p * self.phases[0];
        let mut peak = p.hi.abs();
        let n = self.ratios.len();
        let mut k = 1;
        loop {
            if k >= n {
                let err = if self.truncated { Error::NonConvergent { terms: k } } else { self.out_of_range(az, peak) };
                return Err(err);
            }
            p = p * self.ratios[k] * z;
            let mag = p.hi.abs();
            if mag > GUARD {
                return Err(self.out_of_range(az, mag));
            }
            sum = sum + p * self.phases[k];
            let decreasing = mag <= peak;
            peak = peak.max(mag);
            if decreasing && k + 2 < n {
                let r = self.ratios[k + 1].hi.max(self.ratios[k + 2].hi) * az;
                if r < 1.0 {
                    let tail = mag * r / (1.0 - r);
                    if tail <= tol || tail <= 1e-34 * peak.max(f64::MIN_POSITIVE) {
                        return Ok(SeriesValue { sum });
                    }
                }
            }
            k += 1;
        }
    }

    fn out_of_range(&self, az: f64, peak: f64) -> Error {
        if az <= self.z_max {
            // cannot happen for a table sized by decay; kept as a defensive report
            Error::NonConvergent { terms: self.ratios.len() }
        } else {
            Error::OutOfSeriesRange { peak, guard: GUARD }
        }
    }
}
