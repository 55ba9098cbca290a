//! Signed measures of cylinder events `{a_j <= x(t_j) <= b_j, j = 1..m}`,
//!
//! ```text
//! mu = int_{a_1}^{b_1} ... int_{a_m}^{b_m} prod_j u(x_j - x_{j-1}, t_j - t_{j-1}) dx_m ... dx_1,
//! ```
//!
//! with `x_0 = 0`, `t_0 = 0`. The innermost integral is a difference of the
//! antiderivative, trailing boxes covering the whole line integrate to one and
//! are dropped, and the remaining levels use nested adaptive quadrature.

use crate::error::{domain, Error, Result};
use crate::fresnel_density::{FresnelDensity, Method};
use crate::quad::{adaptive_with_breaks, Tolerance};

/// Largest number of time points handled.
pub const MAX_DEPTH: usize = 3;

/// Tolerance handed to each deeper level, relative to the level above.
const INNER_TOL_FACTOR: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq)]
pub struct CylinderEvent {
    times: Vec<f64>,
    boxes: Vec<(f64, f64)>,
}

impl CylinderEvent {
    /// `times` strictly increasing and positive, one box `(a, b)` with
    /// `a < b` per time; endpoints may be infinite.
    pub fn new(times: Vec<f64>, boxes: Vec<(f64, f64)>) -> Result<Self> {
        if times.is_empty() {
            return domain("a cylinder event needs at least one time");
        }
        if times.len() != boxes.len() {
            return domain(format!("{} times but {} boxes", times.len(), boxes.len()));
        }
        let mut prev = 0.0;
        for &t in &times {
            if !(t > prev && t.is_finite()) {
                return domain(format!("times must be positive, finite and strictly increasing, got {times:?}"));
            }
            prev = t;
        }
        for &(a, b) in &boxes {
            if !(a < b) || a.is_nan() || b.is_nan() || a == f64::INFINITY || b == f64::NEG_INFINITY {
                return domain(format!("box [{a}, {b}] needs a < b"));
            }
        }
        Ok(CylinderEvent { times, boxes })
    }

    /// Event from `(t, a, b)` triples.
    pub fn from_triples(triples: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(triples.iter().map(|r| r.0).collect(), triples.iter().map(|r| (r.1, r.2)).collect())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn boxes(&self) -> &[(f64, f64)] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn full_line(b: (f64, f64)) -> bool {
    b.0 == f64::NEG_INFINITY && b.1 == f64::INFINITY
}

/// Signed measure of `event` under the kernel `u_{2alpha,p}`. At most
/// [`MAX_DEPTH`] time points; the result may be negative or exceed one.
pub fn cylinder_measure(event: &CylinderEvent, kernel: &FresnelDensity, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let m = event.len();
    if m > MAX_DEPTH {
        return Err(Error::DimensionCap { m, cap: MAX_DEPTH });
    }
    let Some(last) = event.boxes.iter().rposition(|&b| !full_line(b)) else {
        return Ok(1.0);
    };
    Nested { event, kernel, last }.level(0, 0.0, 0.0, tol)
}

struct Nested<'a> {
    event: &'a CylinderEvent,
    kernel: &'a FresnelDensity,
    last: usize,
}

impl Nested<'_> {
    fn level(&self, j: usize, x_prev: f64, t_prev: f64, tol: f64) -> Result<f64> {
        let (a, b) = self.event.boxes[j];
        let t = self.event.times[j];
        let dt = t - t_prev;
        if j == self.last {
            return self.kernel.mass(a - x_prev, b - x_prev, dt);
        }
        let scale = dt.powf(1.0 / self.kernel.alpha());
        let inner_tol = tol * INNER_TOL_FACTOR;
        let mut failure = None;
        let mut g = |x: f64| -> f64 {
            let r = self
                .kernel
                .value(x - x_prev, dt, Method::Auto)
                .and_then(|u| Ok(u * self.level(j + 1, x, t, inner_tol)?));
            r.unwrap_or_else(|e| {
                failure.get_or_insert(e);
                0.0
            })
        };
        let tolerance = Tolerance { abs: tol, rel: 0.0, max_panels: 400 };
        let est = if a.is_finite() && b.is_finite() {
            let n = ((b - a) / scale).ceil().clamp(1.0, 64.0) as usize;
            let breaks: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
            adaptive_with_breaks(&mut g, &breaks, tolerance)
        } else {
            // x = c + s L atanh(v) sends v in [0, 1) to the half line
            let mut h = |v: f64, c: f64, s: f64| {
                let w = 1.0 - v * v;
                g(c + s * scale * v.atanh()) * scale / w
            };
            let parts = match (a.is_finite(), b.is_finite()) {
                (true, false) => adaptive_with_breaks(&mut |v| h(v, a, 1.0), &[0.0, 1.0], tolerance),
                (false, true) => adaptive_with_breaks(&mut |v| h(v, b, -1.0), &[0.0, 1.0], tolerance),
                _ => adaptive_with_breaks(&mut |v| h(v, x_prev, 1.0), &[-1.0, 0.0, 1.0], tolerance),
            };
            // the product kernel is at best conditionally integrable here,
            // so any failure below is reported against this level's tolerance
            let estimate = match &parts {
                Err(Error::QuadratureFailure { estimate, .. }) => *estimate,
                _ => f64::NAN,
            };
            if parts.is_err() || failure.is_some() {
                return Err(Error::QuadratureFailure { estimate, tol });
            }
            parts
        };
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(est?.value)
    }
}
