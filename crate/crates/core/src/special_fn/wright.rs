//! The Wright function `W_{-theta, 1-theta}(z) = sum_k z^k / (k! Gamma(1 - theta - theta k))`
//! for `z <= 0` and the density of the one-sided stable law with Laplace
//! transform `exp(-t lambda^theta)`,
//!
//! ```text
//! h_theta(x, t) = theta t / x^(theta+1) W_{-theta, 1-theta}(-t / x^theta).
//! ```
//!
//! By reflection `1 / Gamma(1 - theta (k+1)) = Gamma(theta (k+1)) sin(pi theta (k+1)) / pi`,
//! which removes the poles and puts the series in the shared gamma-power form.
//! For large `|z|` the terms cancel badly and the density switches to
//! Kanter's integral representation.

use std::f64::consts::PI;

use super::series::GammaSeries;
use super::WrightArgs;
use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::quad::{adaptive, Tolerance};

const SERIES_TOL: f64 = 1e-17;

/// Reusable evaluator for a fixed `theta`.
#[derive(Clone, Debug)]
pub struct SubordinatorDensity {
    theta: f64,
    series: GammaSeries,
}

impl SubordinatorDensity {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return domain(format!("subordinator exponent must lie in (0, 1), got {theta}"));
        }
        let th = Dd::new(theta);
        Ok(SubordinatorDensity { theta, series: GammaSeries::new(th, th, 1.0, 0)? })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `W_{-theta,1-theta}(z)` by its series; `OutOfSeriesRange` for large `|z|`.
    pub fn wright_series(&self, z: f64) -> Result<f64> {
        let v = self.series.eval(Dd::new(z), PI * SERIES_TOL)?;
        Ok(v.sum.to_f64() / PI)
    }

    /// `W_{-theta,1-theta}(-y)` for `y >= 0`, falling back to the density
    /// integral when the series is out of range.
    pub fn wright_minus(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) {
            return domain(format!("wright_minus needs y >= 0, got {y}"));
        }
        match self.wright_series(-y) {
            Err(Error::OutOfSeriesRange { .. }) => {
                // W(-y) = h(y^(-1/theta), 1) y^(-(theta+1)/theta) / theta
                let th = self.theta;
                let x = y.powf(-1.0 / th);
                Ok(kanter(x, th)? * y.powf(-(th + 1.0) / th) / th)
            }
            r => r,
        }
    }

    /// `h_theta(x, t)`.
    pub fn pdf(&self, x: f64, t: f64) -> Result<f64> {
        if !(x > 0.0) {
            return domain(format!("subordinator density needs x > 0, got {x}"));
        }
        if !(t > 0.0) {
            return domain(format!("subordinator density needs t > 0, got {t}"));
        }
        let th = self.theta;
        let z = -t / x.powf(th);
        match self.wright_series(z) {
            Ok(w) => Ok(th * t / x.powf(th + 1.0) * w),
            Err(Error::OutOfSeriesRange { .. }) => kanter_scaled(x, t, th),
            Err(e) => Err(e),
        }
    }
}

/// `W_{-theta,1-theta}(z)` by its power series, `z <= 0`.
pub fn wright_series(args: WrightArgs) -> Result<f64> {
    SubordinatorDensity::new(args.theta())?.wright_series(args.z())
}

/// `W_{-theta,1-theta}(-y)` for `y >= 0`, valid for all `y`.
pub fn wright_minus(y: f64, theta: f64) -> Result<f64> {
    SubordinatorDensity::new(theta)?.wright_minus(y)
}

/// Density at `x > 0` of the stable subordinator at time `t`.
pub fn stable_subordinator_pdf(x: f64, t: f64, theta: f64) -> Result<f64> {
    SubordinatorDensity::new(theta)?.pdf(x, t)
}

/// Same density evaluated only through Kanter's integral.
pub fn stable_subordinator_pdf_kanter(x: f64, t: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return domain(format!("subordinator exponent must lie in (0, 1), got {theta}"));
    }
    if !(x > 0.0 && t > 0.0) {
        return domain(format!("subordinator density needs x > 0 and t > 0, got x = {x}, t = {t}"));
    }
    kanter_scaled(x, t, theta)
}

fn kanter_scaled(x: f64, t: f64, theta: f64) -> Result<f64> {
    // S(t) has the law of t^(1/theta) S(1)
    let c = t.powf(1.0 / theta);
    Ok(kanter(x / c, theta)? / c)
}

/// Density of `S(1)` at `x`:
/// `(1/pi) int_0^pi (theta/(1-theta)) A(u) x^(-1/(1-theta)) exp(-A(u) x^(-theta/(1-theta))) du`
/// with `A(u) = sin(theta u)^(theta/(1-theta)) sin((1-theta) u) / sin(u)^(1/(1-theta))`.
fn kanter(x: f64, theta: f64) -> Result<f64> {
    let q = 1.0 - theta;
    let r = theta / q;
    let ln_x = x.ln();
    let scale = (-r * ln_x).exp();
    let ln_front = (theta / q).ln() - ln_x / q;
    // A increases from A(0+) = theta^r (1 - theta), so this bounds the integrand
    let ln_a0 = r * theta.ln() + q.ln();
    if ln_a0 + ln_front - ln_a0.exp() * scale < -745.0 && ln_a0.exp() * scale > 1.0 {
        return Ok(0.0);
    }
    let integrand = |u: f64| -> f64 {
        let ln_a = r * (theta * u).sin().ln() + (q * u).sin().ln() - (u.sin().ln()) / q;
        if !ln_a.is_finite() {
            return 0.0;
        }
        let a = ln_a.exp();
        let ln_v = ln_a + ln_front - a * scale;
        if ln_v < -745.0 {
            0.0
        } else {
            ln_v.exp()
        }
    };
    // the mass concentrates near u = 0 for small x and near u = pi for large x
    let breaks = [0.0, 0.25 * PI, 0.5 * PI, 0.75 * PI, 0.9 * PI, 0.99 * PI, PI];
    let mut f = integrand;
    let e = crate::quad::adaptive_with_breaks(&mut f, &breaks, Tolerance { abs: 1e-300, rel: 1e-12, max_panels: 4000 })
        .or_else(|_| adaptive(integrand, 0.0, PI, Tolerance { abs: 1e-300, rel: 1e-9, max_panels: 8000 }))?;
    Ok(e.value / PI)
}
