//! Signed Fresnel pseudo-densities
//!
//! ```text
//! u_p(x, t) = (1/c) [p Ai_a(-x/c) + (1-p) Ai_a(x/c)],   c = (a t)^(1/a),
//! ```
//!
//! their Fourier transforms, the closed form at `a = 2`, and the
//! representation as a Weibull expectation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::distr::Open01;
use rand::Rng;

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::quad::{adaptive_with_breaks, Estimate, Tolerance};
use crate::special_fn::series::GammaSeries;
use crate::special_fn::{weibull_sample, AiryEvaluator, AiryOrder, WeibullParams};
use crate::stable_sampling::SeededStream;

/// Absolute accuracy requested from the series and Airy evaluations, in
/// units of the density scale `t^(-1/a)`.
const EVAL_TOL: f64 = 1e-14;

/// Order `alpha > 1`, weight `p` in [0, 1] and time `t > 0` of `u_{2alpha,p}(., t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PseudoParams {
    alpha: f64,
    p: f64,
    t: f64,
}

impl PseudoParams {
    pub fn new(alpha: f64, p: f64, t: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return domain(format!("order alpha must exceed 1, got {alpha}"));
        }
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("weight p must lie in [0, 1], got {p}"));
        }
        if !(t > 0.0 && t.is_finite()) {
            return domain(format!("time t must be positive, got {t}"));
        }
        Ok(PseudoParams { alpha, p, t })
    }

    pub fn symmetric(alpha: f64, t: f64) -> Result<Self> {
        Self::new(alpha, 0.5, t)
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    pub fn p(self) -> f64 {
        self.p
    }

    pub fn t(self) -> f64 {
        self.t
    }

    pub fn with_t(self, t: f64) -> Result<Self> {
        Self::new(self.alpha, self.p, t)
    }

    /// `(alpha t)^(1/alpha)`
    pub fn airy_scale(self) -> f64 {
        (self.alpha * self.t).powf(1.0 / self.alpha)
    }
}

/// `a = cos(pi / 2alpha)` and `b = sin(pi / 2alpha)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillationConstants {
    pub a_alpha: f64,
    pub b_alpha: f64,
}

impl OscillationConstants {
    pub fn new(alpha: f64) -> Self {
        let phi = PI / (2.0 * alpha);
        OscillationConstants { a_alpha: phi.cos(), b_alpha: phi.sin() }
    }
}

/// Evaluation route for [`density`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Series inside its working range, Airy composition outside.
    #[default]
    Auto,
    /// Power series in `x / t^(1/alpha)`.
    Series,
    /// Weighted sum of two generalized Airy values, each by its own automatic route.
    Airy,
    /// Weighted sum of two generalized Airy values by oscillatory quadrature.
    Quadrature,
    /// `cos(x^2/4t - pi/4) / (2 sqrt(pi t))`, only for `alpha = 2`, `p = 1/2`.
    ClosedForm,
}

/// How [`weibull_representation`] evaluates the expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeibullMode {
    Quadrature,
    MonteCarlo { n: usize, stream: SeededStream },
}

/// An estimate with its uncertainty: a quadrature error bound, or the
/// standard error of a Monte Carlo mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepresentationValue {
    pub value: f64,
    pub std_error: f64,
}

/// Evaluator for a fixed `(alpha, p)` across many `(x, t)`.
#[derive(Clone, Debug)]
pub struct FresnelDensity {
    alpha: f64,
    p: f64,
    series: GammaSeries,
    airy: AiryEvaluator,
}

impl FresnelDensity {
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        PseudoParams::new(alpha, p, 1.0)?;
        let rho = Dd::ONE.div_f64(alpha);
        let omega = Dd::sum(alpha, 1.0).div_f64(2.0 * alpha);
        Ok(FresnelDensity {
            alpha,
            p,
            series: GammaSeries::new(rho, omega, 1.0 - 2.0 * p, 0)?,
            airy: AiryEvaluator::new(AiryOrder::new(alpha)?)?,
        })
    }

    pub fn from_params(params: PseudoParams) -> Result<Self> {
        Self::new(params.alpha, params.p)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn airy(&self) -> &AiryEvaluator {
        &self.airy
    }

    /// Largest `|x| / t^(1/alpha)` handled by the series route.
    pub fn series_range(&self) -> f64 {
        self.series.z_max()
    }

    pub fn series(&self, x: f64, t: f64) -> Result<f64> {
        // z = x t^(-1/alpha), prefactor 1 / (alpha pi t^(1/alpha))
        let inv_root = (-(Dd::new(t).ln().div_f64(self.alpha))).exp();
        let z = inv_root.mul_f64(x);
        let pre = inv_root.to_f64() / (self.alpha * PI);
        let v = self.series.eval(z, EVAL_TOL)?;
        Ok(pre * v.sum.to_f64())
    }

    fn composition(&self, x: f64, t: f64, quadrature_only: bool) -> Result<f64> {
        let c = (self.alpha * t).powf(1.0 / self.alpha);
        let tol = EVAL_TOL;
        let eval = |y: f64| {
            if quadrature_only {
                self.airy.quadrature(y, tol)
            } else {
                self.airy.value(y, tol)
            }
        };
        let mut acc = 0.0;
        if self.p > 0.0 {
            acc += self.p * eval(-x / c)?;
        }
        if self.p < 1.0 {
            acc += (1.0 - self.p) * eval(x / c)?;
        }
        Ok(acc / c)
    }

    pub fn closed_form(&self, x: f64, t: f64) -> Result<f64> {
        if self.alpha != 2.0 || self.p != 0.5 {
            return Err(Error::UnsupportedClosedForm { alpha: self.alpha, p: self.p });
        }
        Ok((x * x / (4.0 * t) - PI / 4.0).cos() / (2.0 * (PI * t).sqrt()))
    }

    pub fn value(&self, x: f64, t: f64, method: Method) -> Result<f64> {
        match method {
            Method::Auto => match self.series(x, t) {
                Err(Error::OutOfSeriesRange { .. }) => self.composition(x, t, false),
                r => r,
            },
            Method::Series => self.series(x, t),
            Method::Airy => self.composition(x, t, false),
            Method::Quadrature => self.composition(x, t, true),
            Method::ClosedForm => self.closed_form(x, t),
        }
    }

    /// Signed mass of `[a, b]` (endpoints may be infinite), from the
    /// antiderivative of the Airy function.
    pub fn mass(&self, a: f64, b: f64, t: f64) -> Result<f64> {
        if !(a <= b) {
            return domain(format!("interval needs a <= b, got [{a}, {b}]"));
        }
        if a == b {
            return Ok(0.0);
        }
        let c = (self.alpha * t).powf(1.0 / self.alpha);
        let big = |y: f64| self.airy.integral(y, EVAL_TOL);
        let mut acc = 0.0;
        if self.p > 0.0 {
            acc += self.p * (big(-a / c)? - big(-b / c)?);
        }
        if self.p < 1.0 {
            acc += (1.0 - self.p) * (big(b / c)? - big(a / c)?);
        }
        Ok(acc)
    }
}

/// Value of `u_{2alpha,p}(x, t)` by the chosen route.
pub fn density(x: f64, params: PseudoParams, method: Method) -> Result<f64> {
    if method == Method::ClosedForm && (params.alpha != 2.0 || params.p != 0.5) {
        return Err(Error::UnsupportedClosedForm { alpha: params.alpha, p: params.p });
    }
    FresnelDensity::from_params(params)?.value(x, params.t, method)
}

/// Signed mass of `[a, b]` under `u_{2alpha,p}(., t)`.
pub fn mass(a: f64, b: f64, params: PseudoParams) -> Result<f64> {
    FresnelDensity::from_params(params)?.mass(a, b, params.t)
}

/// `int e^(i gamma x) u_p(x, t) dx = p e^(i sgn(gamma) |gamma|^alpha t) + (1-p) e^(-i sgn(gamma) |gamma|^alpha t)`.
pub fn char_fn(gamma: f64, params: PseudoParams) -> Complex64 {
    char_fn_raw(gamma, params.alpha, params.p, params.t)
}

fn char_fn_raw(gamma: f64, alpha: f64, p: f64, t: f64) -> Complex64 {
    if gamma == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let lambda = gamma.abs().powf(alpha) * t;
    let (s, c) = lambda.sin_cos();
    Complex64::new(c, (2.0 * p - 1.0) * gamma.signum() * s)
}

/// Step used by [`pde_fourier_residual`].
pub const PDE_STEP: f64 = 1e-3;

/// `max_gamma |d^2/dt^2 c(gamma, t) + |gamma|^(2 alpha) c(gamma, t)|` with the
/// time derivative replaced by a central difference of step [`PDE_STEP`].
pub fn pde_fourier_residual(gamma_grid: &[f64], params: PseudoParams) -> Result<f64> {
    if gamma_grid.is_empty() {
        return domain("frequency grid is empty");
    }
    let (a, p, t, h) = (params.alpha, params.p, params.t, PDE_STEP);
    let mut worst = 0.0f64;
    for &g in gamma_grid {
        let c = |s: f64| char_fn_raw(g, a, p, s);
        let second = (c(t + h) - c(t) * 2.0 + c(t - h)) / (h * h);
        let r = (second + c(t) * g.abs().powf(2.0 * a)).norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `u_p(x, t) = (1/(pi x)) E[sin(a x G) (p e^(b x G) + (1-p) e^(-b x G))]`,
/// `G ~ Weibull(alpha, 1/t)`, with `a`, `b` from [`OscillationConstants`].
pub fn weibull_representation(x: f64, params: PseudoParams, mode: WeibullMode) -> Result<RepresentationValue> {
    if x == 0.0 || !x.is_finite() {
        return domain(format!("Weibull representation needs finite x != 0, got {x}"));
    }
    let PseudoParams { alpha, p, t } = params;
    let OscillationConstants { a_alpha: a, b_alpha: b } = OscillationConstants::new(alpha);
    let weight = |g: f64| -> f64 {
        let mut w = 0.0;
        if p > 0.0 {
            w += p * (b * x * g).exp();
        }
        if p < 1.0 {
            w += (1.0 - p) * (-b * x * g).exp();
        }
        (a * x * g).sin() * w
    };
    match mode {
        WeibullMode::Quadrature => {
            let e = weibull_quadrature(x, alpha, t, a, b, p)?;
            Ok(RepresentationValue { value: e.value, std_error: e.error })
        }
        WeibullMode::MonteCarlo { n, stream } => {
            if n == 0 {
                return domain("Monte Carlo needs at least one sample");
            }
            let wp = WeibullParams::new(alpha, 1.0 / t)?;
            let mut rng = stream.rng();
            let mut mean = 0.0;
            let mut m2 = 0.0;
            for k in 0..n {
                let u: f64 = rng.sample(Open01);
                let v = weight(weibull_sample(u, wp));
                let d = v - mean;
                mean += d / (k + 1) as f64;
                m2 += d * (v - mean);
            }
            let var = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
            let scale = 1.0 / (PI * x);
            Ok(RepresentationValue { value: mean * scale, std_error: (var / n as f64).sqrt() * scale.abs() })
        }
    }
}

/// `(1/(pi x)) int_0^inf g(y) sin(a x y) (p e^(b x y) + (1-p) e^(-b x y)) dy` for the
/// Weibull density `g(y) = shape t y^(shape-1) exp(-t y^shape)`.
pub(crate) fn weibull_quadrature(x: f64, shape: f64, t: f64, a: f64, b: f64, p: f64) -> Result<Estimate> {
    // the Weibull weight beats exp(b |x| y) beyond this point
    let bx = b * x.abs();
    let mut upper = 1.0f64;
    while t * upper.powf(shape) < bx * upper + 80.0 {
        upper *= 1.5;
    }
    let half_period = PI / (a * x.abs());
    let n = ((upper / half_period).ceil() as usize).clamp(1, 4000);
    let breaks: Vec<f64> = (0..=n).map(|i| upper * i as f64 / n as f64).collect();
    let mut f = |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        let ys = y.powf(shape);
        let mut w = 0.0;
        // fold the exponentials together to avoid overflow
        if p > 0.0 {
            w += p * (b * x * y - t * ys).exp();
        }
        if p < 1.0 {
            w += (1.0 - p) * (-b * x * y - t * ys).exp();
        }
        shape * t * ys / y * (a * x * y).sin() * w
    };
    let tol = Tolerance { abs: 1e-13 * x.abs().min(1.0), rel: 1e-11, max_panels: 20_000 };
    let e = adaptive_with_breaks(&mut f, &breaks, tol)?;
    Ok(Estimate { value: e.value / (PI * x), error: e.error / (PI * x.abs()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_value_for_alpha_two() {
        let p = PseudoParams::symmetric(2.0, 1.0).unwrap();
        let want = 1.0 / (2.0 * (2.0 * PI).sqrt());
        for m in [Method::Auto, Method::Series, Method::Airy, Method::Quadrature, Method::ClosedForm] {
            assert!((density(0.0, p, m).unwrap() - want).abs() < 1e-12, "{m:?}");
        }
    }

    #[test]
    fn closed_form_zero() {
        let p = PseudoParams::symmetric(2.0, 1.0).unwrap();
        let x = (3.0 * PI).sqrt();
        assert!(density(x, p, Method::Series).unwrap().abs() < 1e-13);
    }

    #[test]
    fn closed_form_rejected_elsewhere() {
        let p = PseudoParams::new(3.0, 0.5, 1.0).unwrap();
        assert!(matches!(density(0.0, p, Method::ClosedForm), Err(Error::UnsupportedClosedForm { .. })));
        let p = PseudoParams::new(2.0, 0.3, 1.0).unwrap();
        assert!(matches!(density(0.0, p, Method::ClosedForm), Err(Error::UnsupportedClosedForm { .. })));
    }

    #[test]
    fn char_fn_basics() {
        let p = PseudoParams::new(2.5, 0.3, 1.7).unwrap();
        assert_eq!(char_fn(0.0, p), Complex64::new(1.0, 0.0));
        let s = PseudoParams::symmetric(2.0, 1.0).unwrap();
        let g = PI.sqrt();
        assert!((char_fn(g, s) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(char_fn(0.7, s).im, 0.0);
    }

    #[test]
    fn weibull_quadrature_matches_closed_form() {
        let p = PseudoParams::symmetric(2.0, 1.0).unwrap();
        let v = weibull_representation(1.0, p, WeibullMode::Quadrature).unwrap().value;
        let want = (0.25 - PI / 4.0).cos() / (2.0 * PI.sqrt());
        assert!((v - want).abs() < 1e-12, "{v} vs {want}");
        assert!(weibull_representation(0.0, p, WeibullMode::Quadrature).is_err());
    }

    #[test]
    fn mass_of_whole_line_is_one() {
        let d = FresnelDensity::new(1.7, 0.2).unwrap();
        assert!((d.mass(f64::NEG_INFINITY, f64::INFINITY, 0.8).unwrap() - 1.0).abs() < 1e-15);
    }
}
