//! Special functions: the generalized Airy function, the Wright function on
//! the line `(-theta, 1 - theta)` with the one-sided stable density built
//! from it, and the Weibull density.

mod airy;
pub(crate) mod gamma;
mod oscillatory;
pub(crate) mod series;
mod weibull;
mod wright;

pub use airy::{airy, airy_integral, airy_quadrature, airy_series, AiryEvaluator};
pub use weibull::{weibull_pdf, weibull_sample};
pub use wright::{
    stable_subordinator_pdf, stable_subordinator_pdf_kanter, wright_minus, wright_series, SubordinatorDensity,
};

use crate::error::{domain, Result};

/// Order `alpha > 1` of the generalized Airy function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryOrder {
    alpha: f64,
}

impl AiryOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return domain(format!("Airy order must exceed 1, got {alpha}"));
        }
        Ok(AiryOrder { alpha })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }
}

/// Weibull law with density `gamma y^(gamma-1) / tau * exp(-y^gamma / tau)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeibullParams {
    gamma: f64,
    tau: f64,
}

impl WeibullParams {
    pub fn new(gamma: f64, tau: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return domain(format!("Weibull shape must be positive, got {gamma}"));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return domain(format!("Weibull scale must be positive, got {tau}"));
        }
        Ok(WeibullParams { gamma, tau })
    }

    pub fn gamma(self) -> f64 {
        self.gamma
    }

    pub fn tau(self) -> f64 {
        self.tau
    }
}

/// Argument of `W_{-theta, 1-theta}(z)`, restricted to `z <= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WrightArgs {
    theta: f64,
    z: f64,
}

impl WrightArgs {
    pub fn new(theta: f64, z: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return domain(format!("Wright parameter theta must lie in (0, 1), got {theta}"));
        }
        if !(z <= 0.0) {
            return domain(format!("Wright argument must be non-positive, got {z}"));
        }
        Ok(WrightArgs { theta, z })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn z(self) -> f64 {
        self.z
    }
}
