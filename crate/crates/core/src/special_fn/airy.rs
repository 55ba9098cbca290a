//! The generalized Airy function
//!
//! ```text
//! Ai_a(x) = (1/pi) int_0^inf cos(s x + s^a / a) ds,   a > 1,
//! ```
//!
//! which is the classical Airy function at `a = 3`, together with its
//! antiderivative `int_{-inf}^y Ai_a`.

use std::f64::consts::PI;

use super::oscillatory::{oscillatory_integral, Kernel};
use super::series::GammaSeries;
use super::AiryOrder;
use crate::dd::{self, Dd};
use crate::error::{Error, Result};

/// Reusable evaluator for one order. Building it tabulates the series
/// coefficients once, which pays off when many points share an order.
#[derive(Clone, Debug)]
pub struct AiryEvaluator {
    alpha: f64,
    value_series: GammaSeries,
    integral_series: GammaSeries,
    /// `a^(1/a)`, the argument scaling of both series
    scale: Dd,
}

impl AiryEvaluator {
    pub fn new(order: AiryOrder) -> Result<Self> {
        let alpha = order.alpha();
        let rho = Dd::ONE.div_f64(alpha);
        let omega = Dd::sum(alpha, 1.0).div_f64(2.0 * alpha);
        Ok(AiryEvaluator {
            alpha,
            value_series: GammaSeries::new(rho, omega, 1.0, 0)?,
            integral_series: GammaSeries::new(rho, omega, 1.0, 1)?,
            scale: (Dd::new(alpha).ln().div_f64(alpha)).exp(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `1 / (pi a^((a-1)/a))`
    fn value_prefactor(&self) -> f64 {
        1.0 / (PI * self.alpha.powf((self.alpha - 1.0) / self.alpha))
    }

    /// Largest `|x|` accepted by [`Self::series`].
    pub fn series_range(&self) -> f64 {
        self.value_series.z_max() / self.scale.to_f64()
    }

    /// Power-series evaluation; fails with `OutOfSeriesRange` when the terms
    /// would grow past the cancellation guard.
    pub fn series(&self, x: f64, tol: f64) -> Result<f64> {
        let pre = self.value_prefactor();
        let v = self.value_series.eval(self.scale.mul_f64(x), tol / pre)?;
        Ok(pre * v.sum.to_f64())
    }

    /// Oscillatory quadrature of the defining integral.
    pub fn quadrature(&self, x: f64, tol: f64) -> Result<f64> {
        Ok(oscillatory_integral(x, self.alpha, Kernel::Cos, PI * tol)? / PI)
    }

    /// Series inside its working range, quadrature outside.
    pub fn value(&self, x: f64, tol: f64) -> Result<f64> {
        match self.series(x, tol) {
            Err(Error::OutOfSeriesRange { .. }) => self.quadrature(x, tol),
            r => r,
        }
    }

    /// `int_{-inf}^y Ai_a` by its power series
    /// `1/2 + 1/(2a) + (1/(pi a)) sum_k z^(k+1) Gamma((k+1)/a) sin(...) / (k+1)!`
    /// with `z = y a^(1/a)`.
    pub fn integral_series(&self, y: f64, tol: f64) -> Result<f64> {
        let pre = 1.0 / (PI * self.alpha);
        let v = self.integral_series.eval(self.scale.mul_f64(y), tol / pre)?;
        let base = Dd::new(0.5) + Dd::new(0.5).div_f64(self.alpha);
        Ok((base + (v.sum * Dd::ONE.div_f64(self.alpha)) / dd::PI).to_f64())
    }

    /// `int_{-inf}^y Ai_a = 1/2 + (1/pi) int_0^inf sin(s y + s^a/a) / s ds`.
    pub fn integral_quadrature(&self, y: f64, tol: f64) -> Result<f64> {
        if y.is_infinite() {
            return Ok(if y > 0.0 { 1.0 } else { 0.0 });
        }
        Ok(0.5 + oscillatory_integral(y, self.alpha, Kernel::SinOverS, PI * tol)? / PI)
    }

    /// Antiderivative with automatic method choice; accepts infinite `y`.
    pub fn integral(&self, y: f64, tol: f64) -> Result<f64> {
        if y.is_infinite() {
            return Ok(if y > 0.0 { 1.0 } else { 0.0 });
        }
        match self.integral_series(y, tol) {
            Err(Error::OutOfSeriesRange { .. }) => self.integral_quadrature(y, tol),
            r => r,
        }
    }
}

/// `Ai_a(x)` by its power series.
pub fn airy_series(x: f64, order: AiryOrder, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    AiryEvaluator::new(order)?.series(x, tol)
}

/// `Ai_a(x)` by oscillatory quadrature of the defining integral.
pub fn airy_quadrature(x: f64, order: AiryOrder, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    AiryEvaluator::new(order)?.quadrature(x, tol)
}

/// `Ai_a(x)`, series where it is reliable and quadrature elsewhere.
pub fn airy(x: f64, order: AiryOrder, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    AiryEvaluator::new(order)?.value(x, tol)
}

/// `int_{-inf}^y Ai_a(s) ds`.
pub fn airy_integral(y: f64, order: AiryOrder, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    AiryEvaluator::new(order)?.integral(y, tol)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be positive, got {tol}")))
    }
}
