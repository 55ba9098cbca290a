//! Gamma function helpers in plain `f64`, backed by the double-double
//! Stirling evaluation.

use crate::dd::Dd;

/// `ln Gamma(x)` for `x > 0`.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    Dd::new(x).ln_gamma().to_f64()
}

/// `Gamma(x)` for `x > 0`.
#[cfg(test)]
pub(crate) fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// `1 / Gamma(x)` for any real `x`; exactly zero at the poles of Gamma.
#[cfg(test)]
pub(crate) fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        return (-ln_gamma(x)).exp();
    }
    if x == x.floor() {
        return 0.0;
    }
    // 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
    let s = Dd::new(x).sin_pi().to_f64();
    s * ln_gamma(1.0 - x).exp() / std::f64::consts::PI
}
