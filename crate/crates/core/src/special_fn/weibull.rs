use super::WeibullParams;
use crate::error::{domain, Result};

/// Weibull density `gamma y^(gamma-1) / tau * exp(-y^gamma / tau)` for `y > 0`.
pub fn weibull_pdf(y: f64, params: WeibullParams) -> Result<f64> {
    if !(y > 0.0) {
        return domain(format!("Weibull density needs y > 0, got {y}"));
    }
    let (g, tau) = (params.gamma(), params.tau());
    let yg = y.powf(g);
    Ok(g * yg / (y * tau) * (-yg / tau).exp())
}

/// Inverse-CDF transform `(tau (-ln u))^(1/gamma)` of a uniform `u` in (0, 1).
pub fn weibull_sample(u: f64, params: WeibullParams) -> f64 {
    (params.tau() * -u.ln()).powf(1.0 / params.gamma())
}
