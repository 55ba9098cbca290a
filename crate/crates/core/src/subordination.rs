//! The Fresnel pseudoprocess evaluated at an independent stable subordinator
//! time, `Y(t) = F(S_theta(t))`, whose law is a mixture of two stable laws
//! of index `nu = alpha theta`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::fresnel_density::{weibull_quadrature, FresnelDensity, Method, OscillationConstants};
use crate::quad::{adaptive_with_breaks, Tolerance};
use crate::special_fn::gamma::ln_gamma;
use crate::special_fn::series::GammaSeries;
use crate::special_fn::SubordinatorDensity;

/// `|alpha theta - c| <= REGIME_EPS` counts as `alpha theta = c`.
const REGIME_EPS: f64 = 1e-12;

/// Order `alpha > 1`, subordinator exponent `theta` in (0, 1) and weight `p`,
/// with `alpha theta <= 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubordinationSpec {
    alpha: f64,
    theta: f64,
    p: f64,
}

impl SubordinationSpec {
    pub fn new(alpha: f64, theta: f64, p: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return domain(format!("order alpha must exceed 1, got {alpha}"));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return domain(format!("subordinator exponent theta must lie in (0, 1), got {theta}"));
        }
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("weight p must lie in [0, 1], got {p}"));
        }
        if alpha * theta > 2.0 + REGIME_EPS {
            return Err(Error::InvalidRegime(format!("alpha theta = {} exceeds 2", alpha * theta)));
        }
        Ok(SubordinationSpec { alpha, theta, p })
    }

    pub fn symmetric(alpha: f64, theta: f64) -> Result<Self> {
        Self::new(alpha, theta, 0.5)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `nu = alpha theta`
    pub fn nu(&self) -> f64 {
        self.alpha * self.theta
    }

    /// The same spec with `p` replaced.
    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(self.alpha, self.theta, p)
    }

    pub fn is_cauchy(&self) -> bool {
        (self.nu() - 1.0).abs() <= REGIME_EPS
    }
}

/// Stable law with characteristic function
/// `exp(-t sigma^nu |g|^nu (1 - i beta sgn(g) tan(pi nu / 2)) + i mu t g)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableParams {
    nu: f64,
    sigma: f64,
    beta: f64,
    mu: f64,
}

impl StableParams {
    pub fn new(nu: f64, sigma: f64, beta: f64, mu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu <= 2.0) {
            return Err(Error::InvalidRegime(format!("stable index must lie in (0, 2], got {nu}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return domain(format!("dispersion must be positive, got {sigma}"));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::InvalidRegime(format!("skewness must lie in [-1, 1], got {beta}")));
        }
        if !mu.is_finite() {
            return domain(format!("drift must be finite, got {mu}"));
        }
        Ok(StableParams { nu, sigma, beta, mu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Characteristic function at time `t` (`nu != 1`).
    pub fn char_fn(&self, gamma: f64, t: f64) -> Complex64 {
        if gamma == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        let skew = self.beta * gamma.signum() * (FRAC_PI_2 * self.nu).tan();
        let m = t * (self.sigma * gamma.abs()).powf(self.nu);
        (Complex64::new(-m, m * skew + self.mu * t * gamma)).exp()
    }
}

/// Result of [`parameter_map`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParameterMap {
    Stable(StableParams),
    /// `alpha theta = 1`: the components are Cauchy laws.
    CauchyCase,
}

/// `nu = alpha theta`, `beta = -tan(pi theta/2) / tan(pi nu/2)`,
/// `sigma = cos(pi theta/2)^(1/nu)`, `mu = 0`. At `nu = 2` the skewness
/// multiplies `tan(pi) = 0` and is set to 0.
pub fn parameter_map(spec: SubordinationSpec) -> Result<ParameterMap> {
    let nu = spec.nu();
    if spec.is_cauchy() {
        return Ok(ParameterMap::CauchyCase);
    }
    if nu > 2.0 + REGIME_EPS {
        return Err(Error::InvalidRegime(format!("alpha theta = {nu} exceeds 2")));
    }
    let half = FRAC_PI_2 * spec.theta;
    let sigma_nu = half.cos();
    let (nu, beta) = if (nu - 2.0).abs() <= REGIME_EPS {
        (2.0, 0.0)
    } else {
        let mut beta = -half.tan() / (FRAC_PI_2 * nu).tan();
        if beta.abs() > 1.0 && beta.abs() <= 1.0 + 1e-12 {
            beta = beta.signum();
        }
        (nu, beta)
    };
    if !(-1.0..=1.0).contains(&beta) {
        return Err(Error::InvalidRegime(format!(
            "alpha = {}, theta = {} gives skewness {beta:.6}, outside [-1, 1]",
            spec.alpha, spec.theta
        )));
    }
    Ok(ParameterMap::Stable(StableParams::new(nu, sigma_nu.powf(1.0 / nu), beta, 0.0)?))
}

/// `p e^(-t |g|^nu cos(pi theta/2) (1 + i tan(pi theta/2) sgn g)) + (1-p) (conjugate exponent)`,
/// i.e. `p CF(H) + (1-p) CF(-H)` with `H` from [`parameter_map`].
///
/// The subordinated density built from `u_p` has the weights the other way
/// round; see [`subordinated_density_char_fn`].
pub fn subordinated_char_fn(gamma: f64, t: f64, spec: SubordinationSpec) -> Complex64 {
    if gamma == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let half = FRAC_PI_2 * spec.theta;
    let m = t * gamma.abs().powf(spec.nu());
    let re = -m * half.cos();
    let im = m * half.sin() * gamma.signum();
    let plus = Complex64::new(re, -im).exp();
    let minus = Complex64::new(re, im).exp();
    plus * spec.p + minus * (1.0 - spec.p)
}

/// `int e^(i g x) f(x) dx` for the density `f = int u_p(x, s) h_theta(s, t) ds`.
/// Since `int e^(i lambda s) h_theta(s, t) ds = exp(-t |lambda|^theta e^(-i pi theta/2 sgn lambda))`,
/// the weight `p` of `u_p` lands on the `(1 - i tan(pi theta/2) sgn g)` term,
/// so this equals `subordinated_char_fn` with `p` and `1 - p` exchanged.
pub fn subordinated_density_char_fn(gamma: f64, t: f64, spec: SubordinationSpec) -> Complex64 {
    let swapped = SubordinationSpec { p: 1.0 - spec.p, ..spec };
    subordinated_char_fn(gamma, t, swapped)
}

/// Reusable series evaluator for `p = 1/2`, `alpha theta > 1`.
#[derive(Clone, Debug)]
pub struct SubordinatedSeries {
    spec: SubordinationSpec,
    series: GammaSeries,
}

impl SubordinatedSeries {
    pub fn new(spec: SubordinationSpec) -> Result<Self> {
        let nu = spec.nu();
        if nu <= 1.0 + REGIME_EPS {
            return domain(format!("the series needs alpha theta > 1, got {nu}"));
        }
        if spec.p != 0.5 {
            return domain(format!("the series is the symmetric case p = 1/2, got p = {}", spec.p));
        }
        let rho = Dd::ONE / (Dd::new(spec.alpha) * Dd::new(spec.theta));
        let omega = Dd::sum(spec.alpha, 1.0).div_f64(2.0 * spec.alpha);
        Ok(SubordinatedSeries { spec, series: GammaSeries::new(rho, omega, 0.0, 0)? })
    }

    /// `(1/(nu pi t^(1/nu))) sum_k z^(2k) Gamma((2k+1)/nu) / (2k)! sin(pi (2k+1)(alpha+1)/(2 alpha))`,
    /// `z = x / t^(1/nu)`.
    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return domain(format!("time t must be positive, got {t}"));
        }
        let nu = self.spec.nu();
        let inv_root = (-(Dd::new(t).ln().div_f64(nu))).exp();
        let v = self.series.eval(inv_root.mul_f64(x), 1e-16)?;
        Ok(inv_root.to_f64() / (nu * PI) * v.sum.to_f64())
    }
}

/// Density of `Y(t)` at `x` by its power series (`p = 1/2`, `alpha theta > 1`).
pub fn subordinated_density_series(x: f64, t: f64, spec: SubordinationSpec) -> Result<f64> {
    SubordinatedSeries::new(spec)?.value(x, t)
}

/// Absolute accuracy of [`subordinated_density_quadrature`] relative to the
/// density scale `t^(-1/nu)`.
const SUBORDINATION_TOL: f64 = 1e-10;

/// Reusable evaluator of `int_0^inf u_p(x, s) h_theta(s, t) ds` for one spec.
#[derive(Clone, Debug)]
pub struct SubordinatedQuadrature {
    spec: SubordinationSpec,
    fresnel: FresnelDensity,
    subordinator: SubordinatorDensity,
}

impl SubordinatedQuadrature {
    pub fn new(spec: SubordinationSpec) -> Result<Self> {
        Ok(SubordinatedQuadrature {
            spec,
            fresnel: FresnelDensity::new(spec.alpha, spec.p)?,
            subordinator: SubordinatorDensity::new(spec.theta)?,
        })
    }

    pub fn spec(&self) -> SubordinationSpec {
        self.spec
    }

    /// The integral is taken in `v = ln s` over `[ln s_lo, ln s_hi]`, where
    /// `s_lo` is below the point where `h_theta` becomes negligible, and the
    /// remaining `s > s_hi` is summed analytically from the two power series.
    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return domain(format!("time t must be positive, got {t}"));
        }
        if !x.is_finite() {
            return domain(format!("x must be finite, got {x}"));
        }
        let (alpha, theta) = (self.spec.alpha, self.spec.theta);
        let s_scale = t.powf(1.0 / theta);
        let scale = s_scale.powf(-1.0 / alpha);
        let tol = SUBORDINATION_TOL * scale;

        let s_hi = (4.0 * x.abs()).powf(alpha).max(4f64.powf(1.0 / theta) * s_scale);
        let h = |s: f64| self.subordinator.pdf(s, t);
        // |u(x, s)| <= s^(-1/alpha) up to a constant of order one
        let weight_bound = |s: f64| -> Result<f64> { Ok(h(s)? * s.powf(1.0 - 1.0 / alpha)) };
        let mut s_lo = s_scale;
        let mut guard = 0;
        while weight_bound(s_lo)? > 1e-3 * tol {
            s_lo *= 0.5;
            guard += 1;
            if guard > 2000 {
                return Err(Error::QuadratureFailure { estimate: f64::NAN, tol });
            }
        }

        let (v_lo, v_hi) = (s_lo.ln(), s_hi.ln());
        let n = (((v_hi - v_lo) / 0.25).ceil() as usize).max(4);
        let mut breaks: Vec<f64> = (0..=n).map(|i| v_lo + (v_hi - v_lo) * i as f64 / n as f64).collect();
        breaks[n] = v_hi;
        let mut failure = None;
        let mut f = |v: f64| -> f64 {
            let s = v.exp();
            match (self.fresnel.value(x, s, Method::Auto), h(s)) {
                (Ok(u), Ok(hv)) => u * hv * s,
                (Err(e), _) | (_, Err(e)) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        };
        let body = adaptive_with_breaks(&mut f, &breaks, Tolerance { abs: 0.5 * tol, rel: 0.0, max_panels: 20_000 });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(body?.value + self.tail(x, t, s_hi)?)
    }

    /// `int_{s_hi}^inf u_p(x, s) h_theta(s, t) ds` as a double series: with
    /// `u = sum_k A_k s^(-(k+1)/alpha)` and `h = sum_j B_j s^(-theta (j+1) - 1)`,
    /// each product integrates to `A_k B_j s_hi^(-e) / e`, `e = (k+1)/alpha + theta (j+1)`.
    fn tail(&self, x: f64, t: f64, s_hi: f64) -> Result<f64> {
        let (alpha, theta, p) = (self.spec.alpha, self.spec.theta, self.spec.p);
        let ln_s = s_hi.ln();
        let omega = (alpha + 1.0) / (2.0 * alpha);
        let mut a_terms = Vec::new();
        for k in 0..400usize {
            let kf = k as f64;
            let w = if k % 2 == 1 { 1.0 - 2.0 * p } else { 1.0 };
            let phase = Dd::new(omega).mul_f64(kf + 1.0).sin_pi().to_f64() * w;
            let ln_mag = if x == 0.0 && k > 0 {
                f64::NEG_INFINITY
            } else {
                let lx = if k == 0 { 0.0 } else { kf * x.abs().ln() };
                lx + ln_gamma((kf + 1.0) / alpha) - ln_gamma(kf + 1.0) - (kf + 1.0) / alpha * ln_s - (alpha * PI).ln()
            };
            let sign = if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            a_terms.push((kf + 1.0) / alpha);
            a_terms.push(sign * phase * ln_mag.exp());
            if k > 8 && ln_mag < -80.0 {
                break;
            }
        }
        let mut b_terms = Vec::new();
        for j in 0..400usize {
            let jf = j as f64;
            let arg = theta * (jf + 1.0);
            // 1 / Gamma(1 - arg) = Gamma(arg) sin(pi arg) / pi
            let s = Dd::new(arg).sin_pi().to_f64();
            let ln_mag = theta.ln() + (jf + 1.0) * t.ln() - ln_gamma(jf + 1.0) + ln_gamma(arg) - PI.ln() - arg * ln_s;
            let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
            b_terms.push(arg);
            b_terms.push(sign * s * ln_mag.exp());
            if j > 8 && ln_mag < -80.0 {
                break;
            }
        }
        let mut acc = 0.0;
        for a in a_terms.chunks(2) {
            for b in b_terms.chunks(2) {
                acc += a[1] * b[1] / (a[0] + b[0]);
            }
        }
        if !acc.is_finite() {
            return Err(Error::NonConvergent { terms: a_terms.len() / 2 });
        }
        Ok(acc)
    }
}

/// Density of `Y(t)` at `x` by quadrature of the subordination integral; any `p`.
pub fn subordinated_density_quadrature(x: f64, t: f64, spec: SubordinationSpec) -> Result<f64> {
    SubordinatedQuadrature::new(spec)?.value(x, t)
}

/// `(nu t / (pi x)) int_0^inf exp(-t y^nu) y^(nu-1) sin(a x y) cosh(b x y) dy`,
/// the expectation over `G ~ Weibull(nu, 1/t)` with `nu = alpha theta` and
/// `a`, `b` from the order `alpha` (`p = 1/2`, `alpha theta > 1`).
pub fn subordinated_weibull_repr(x: f64, t: f64, spec: SubordinationSpec) -> Result<f64> {
    if spec.nu() <= 1.0 + REGIME_EPS {
        return domain(format!("the Weibull form needs alpha theta > 1, got {}", spec.nu()));
    }
    if spec.p != 0.5 {
        return domain(format!("the Weibull form is the symmetric case p = 1/2, got p = {}", spec.p));
    }
    if x == 0.0 || !x.is_finite() {
        return domain(format!("the Weibull form needs finite x != 0, got {x}"));
    }
    if !(t > 0.0) {
        return domain(format!("time t must be positive, got {t}"));
    }
    let OscillationConstants { a_alpha, b_alpha } = OscillationConstants::new(spec.alpha);
    Ok(weibull_quadrature(x, spec.nu(), t, a_alpha, b_alpha, 0.5)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_examples() {
        match parameter_map(SubordinationSpec::symmetric(3.0, 0.5).unwrap()).unwrap() {
            ParameterMap::Stable(s) => {
                assert!((s.nu() - 1.5).abs() < 1e-15);
                assert!((s.beta() - 1.0).abs() < 1e-12);
                assert!((s.sigma() - 2f64.powf(-1.0 / 3.0)).abs() < 1e-12);
                assert_eq!(s.mu(), 0.0);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parameter_map(SubordinationSpec::symmetric(2.0, 0.5).unwrap()).unwrap(), ParameterMap::CauchyCase);
        match parameter_map(SubordinationSpec::symmetric(4.0, 0.5).unwrap()).unwrap() {
            ParameterMap::Stable(s) => {
                assert_eq!(s.nu(), 2.0);
                assert_eq!(s.beta(), 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn skewness_outside_range_is_invalid() {
        let r = parameter_map(SubordinationSpec::symmetric(2.5, 0.6).unwrap());
        assert!(matches!(r, Err(Error::InvalidRegime(_))));
        assert!(matches!(SubordinationSpec::symmetric(3.0, 0.9), Err(Error::InvalidRegime(_))));
    }

    #[test]
    fn char_fn_identity() {
        let spec = SubordinationSpec::new(3.0, 0.5, 0.3).unwrap();
        let ParameterMap::Stable(h) = parameter_map(spec).unwrap() else { panic!() };
        for i in 0..50 {
            let g = -5.0 + 0.2 * i as f64 + 0.01;
            let direct = subordinated_char_fn(g, 1.3, spec);
            let mix = h.char_fn(g, 1.3) * 0.3 + h.char_fn(-g, 1.3) * 0.7;
            assert!((direct - mix).norm() < 1e-12);
        }
    }

    #[test]
    fn levy_half_series_matches_quadrature() {
        let spec = SubordinationSpec::symmetric(3.0, 0.5).unwrap();
        let s = subordinated_density_series(0.7, 1.0, spec).unwrap();
        let q = subordinated_density_quadrature(0.7, 1.0, spec).unwrap();
        assert!((s - q).abs() < 1e-8, "{s} vs {q}");
    }
}
