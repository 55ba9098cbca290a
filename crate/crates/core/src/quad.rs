//! Gauss-Kronrod quadrature and sequence acceleration.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

/// Integral value together with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 21-point Kronrod panel on `[a, b]`.
pub fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        // odd indices of the Kronrod abscissae are the Gauss nodes
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    Estimate {
        value: res_k * half,
        error: rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
    }
}

/// Tolerances and subdivision budget for [`adaptive`].
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Tolerance {
    pub fn abs(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0, max_panels: 2000 }
    }

    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel, max_panels: 2000 }
    }
}

/// Globally adaptive bisection of `[a, b]`, always splitting the panel with
/// the largest error estimate. Fails with `QuadratureFailure` when the budget
/// runs out before `error <= max(abs, rel * |value|)`.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    adaptive_with_breaks(&mut f, &[a, b], tol)
}

/// Like [`adaptive`] but starts from the panels given by `breaks` (sorted).
pub fn adaptive_with_breaks<F: FnMut(f64) -> f64>(f: &mut F, breaks: &[f64], tol: Tolerance) -> Result<Estimate> {
    debug_assert!(breaks.len() >= 2);
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let e = gk21(f, w[0], w[1]);
            Panel { a: w[0], b: w[1], value: e.value, error: e.error }
        })
        .collect();
    if panels.is_empty() {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target {
            return Ok(Estimate { value, error });
        }
        let (idx, worst) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if panels.len() >= tol.max_panels || mid <= worst.a || mid >= worst.b {
            return Err(Error::QuadratureFailure { estimate: error, tol: target });
        }
        let left = gk21(f, worst.a, mid);
        let right = gk21(f, mid, worst.b);
        panels[idx] = Panel { a: worst.a, b: mid, value: left.value, error: left.error };
        panels.push(Panel { a: mid, b: worst.b, value: right.value, error: right.error });
    }
}

/// `int_a^inf f` through `x = a + u / (1 - u)`.
pub fn adaptive_upper<F: FnMut(f64) -> f64>(mut f: F, a: f64, tol: Tolerance) -> Result<Estimate> {
    adaptive(
        |u| {
            let w = 1.0 - u;
            let v = f(a + u / w);
            if v == 0.0 {
                0.0
            } else {
                v / (w * w)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// `int_{-inf}^b f` through `x = b - u / (1 - u)`.
pub fn adaptive_lower<F: FnMut(f64) -> f64>(mut f: F, b: f64, tol: Tolerance) -> Result<Estimate> {
    adaptive_upper(|x| f(2.0 * b - x), b, tol)
}

/// Limit of a sequence of partial sums by repeated pairwise averaging
/// (the Euler transform in partial-sum form).
pub fn iterated_average(partials: &[f64]) -> f64 {
    let mut level: Vec<f64> = partials.to_vec();
    while level.len() > 1 {
        for i in 0..level.len() - 1 {
            level[i] = 0.5 * (level[i] + level[i + 1]);
        }
        level.pop();
    }
    level.first().copied().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let e = gk21(&mut |x: f64| x.powi(20), -1.0, 2.0);
        let exact = (2f64.powi(21) + 1.0) / 21.0;
        assert_relative_eq!(e.value, exact, max_relative = 1e-13);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let e = adaptive(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, Tolerance::abs(1e-10)).unwrap();
        assert!((e.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn semi_infinite_gaussian() {
        let e = adaptive_upper(|x: f64| (-x * x).exp(), 0.0, Tolerance::abs(1e-12)).unwrap();
        assert!((e.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-11);
        let e = adaptive_lower(|x: f64| (-x * x).exp(), 0.0, Tolerance::abs(1e-12)).unwrap();
        assert!((e.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tol = Tolerance { abs: 1e-14, rel: 0.0, max_panels: 4 };
        let r = adaptive(|x: f64| (50.0 * x).sin() / x.sqrt(), 0.0, 10.0, tol);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }

    #[test]
    fn averaging_sums_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut s = 0.0;
        let partials: Vec<f64> = (1..=40)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((iterated_average(&partials) - std::f64::consts::LN_2).abs() < 1e-12);
    }
}
