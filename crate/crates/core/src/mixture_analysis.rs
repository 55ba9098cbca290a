//! The two-component Cauchy mixture that arises when `alpha theta = 1`,
//!
//! ```text
//! f(x) = (t cos(phi) / pi) (x^2 + t^2 + 2 (2p-1) x t sin(phi)) / (x^4 + t^4 + 2 x^2 t^2 cos(2 phi)),
//! ```
//!
//! with `phi = pi / (2 alpha)`, and its stationary points.
//!
//! In the scaled variable `xi = x / t` the numerator of `f'` is, up to the
//! negative factor `-2 t^5`, the monic quintic
//!
//! ```text
//! P(xi) = xi^5 + 3c xi^4 + 2 xi^3 + 2c C xi^2 - (1 - 2C) xi - c,   c = (2p-1) sin(phi),  C = cos(2 phi),
//! ```
//!
//! so `sgn f'(x) = -sgn P(x / t)`.

use std::f64::consts::PI;

use nalgebra::SMatrix;

use crate::error::{domain, Error, Result};

/// Relative curvature below which a stationary point counts as degenerate.
pub const INFLECTION_TOL: f64 = 1e-8;

/// Relative curvature below which a report is flagged as near a transition.
const NEAR_CRITICAL_TOL: f64 = 1e-4;

/// Eigenvalues with `|im| <= REAL_TOL max(1, |re|)` are real-root candidates.
const REAL_TOL: f64 = 1e-4;

/// Accepted `|P(xi)|` relative to `sum |a_k| |xi|^k`.
const RESIDUAL_TOL: f64 = 1e-10;

/// `P` coefficients, constant term first.
type Quintic = [f64; 6];

/// Validated parameters of the Cauchy mixture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CauchyMixture {
    alpha: f64,
    p: f64,
    t: f64,
    /// `(2p - 1) sin(phi)`
    c: f64,
    /// `cos(pi / alpha)`
    cos2: f64,
    /// `t cos(phi) / pi`
    k: f64,
}

impl CauchyMixture {
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
        let phi = PI / (2.0 * alpha);
        Ok(CauchyMixture { alpha, p, t, c: (2.0 * p - 1.0) * phi.sin(), cos2: (PI / alpha).cos(), k: t * phi.cos() / PI })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Location `t sin(phi)` and scale `t cos(phi)` of the component with weight `p`;
    /// the other component sits at `-t sin(phi)`.
    pub fn components(&self) -> (f64, f64) {
        let phi = PI / (2.0 * self.alpha);
        (self.t * phi.sin(), self.t * phi.cos())
    }

    fn parts(&self, x: f64) -> [f64; 6] {
        let t = self.t;
        let n = x * x + t * t + 2.0 * self.c * x * t;
        let n1 = 2.0 * x + 2.0 * self.c * t;
        let d = x.powi(4) + t.powi(4) + 2.0 * self.cos2 * x * x * t * t;
        let d1 = 4.0 * x.powi(3) + 4.0 * self.cos2 * x * t * t;
        let d2 = 12.0 * x * x + 4.0 * self.cos2 * t * t;
        [n, n1, 2.0, d, d1, d2]
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let [n, _, _, d, _, _] = self.parts(x);
        self.k * n / d
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let [n, n1, _, d, d1, _] = self.parts(x);
        self.k * (n1 * d - n * d1) / (d * d)
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let [n, n1, n2, d, d1, d2] = self.parts(x);
        let g = n1 * d - n * d1;
        let g1 = n2 * d - n * d2;
        self.k * (g1 * d - 2.0 * g * d1) / (d * d * d)
    }

    /// Coefficients of `P`, constant term first.
    fn quintic(&self) -> Quintic {
        let (c, cc) = (self.c, self.cos2);
        [-c, -(1.0 - 2.0 * cc), 2.0 * c * cc, 2.0, 3.0 * c, 1.0]
    }
}

/// The mixture density; NaN outside `alpha > 1`, `p` in [0, 1], `t > 0`.
pub fn cauchy_mixture_pdf(x: f64, alpha: f64, p: f64, t: f64) -> f64 {
    CauchyMixture::new(alpha, p, t).map_or(f64::NAN, |m| m.pdf(x))
}

/// `d f / dx`; NaN outside the parameter domain.
pub fn pdf_derivative(x: f64, alpha: f64, p: f64, t: f64) -> f64 {
    CauchyMixture::new(alpha, p, t).map_or(f64::NAN, |m| m.derivative(x))
}

/// `d^2 f / dx^2`; NaN outside the parameter domain.
pub fn pdf_second_derivative(x: f64, alpha: f64, p: f64, t: f64) -> f64 {
    CauchyMixture::new(alpha, p, t).map_or(f64::NAN, |m| m.second_derivative(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModalityKind {
    Unimodal,
    Bimodal,
    InflectionCase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StationaryClass {
    Max,
    Min,
    Inflection,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryPoint {
    pub x: f64,
    pub class: StationaryClass,
    /// `f''(x)`
    pub curvature: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModalityReport {
    pub kind: ModalityKind,
    /// Sorted by location.
    pub stationary_points: Vec<StationaryPoint>,
    /// `(alpha, p, t)`
    pub parameters_used: (f64, f64, f64),
    /// Set when some stationary point has relative curvature below `1e-4`,
    /// i.e. the parameters sit close to a change of modality.
    pub near_critical: bool,
}

impl ModalityReport {
    pub fn maxima(&self) -> impl Iterator<Item = f64> + '_ {
        self.points_of(StationaryClass::Max)
    }

    pub fn points_of(&self, class: StationaryClass) -> impl Iterator<Item = f64> + '_ {
        self.stationary_points.iter().filter(move |s| s.class == class).map(|s| s.x)
    }
}

/// Modes of the symmetric (`p = 1/2`) mixture from the closed form: maxima
/// at `+-t sqrt(2 sin(phi) - 1)` around a minimum at 0 when `alpha < 3`, a
/// single maximum at 0 otherwise.
pub fn mode_analysis(alpha: f64, t: f64) -> Result<ModalityReport> {
    let m = CauchyMixture::new(alpha, 0.5, t)?;
    let phi = PI / (2.0 * alpha);
    let s = 2.0 * phi.sin() - 1.0;
    let point = |x: f64, class| StationaryPoint { x, class, curvature: m.second_derivative(x) };
    let (kind, stationary_points) = if alpha < 3.0 && s > 0.0 {
        let r = t * s.sqrt();
        (
            ModalityKind::Bimodal,
            vec![point(-r, StationaryClass::Max), point(0.0, StationaryClass::Min), point(r, StationaryClass::Max)],
        )
    } else {
        (ModalityKind::Unimodal, vec![point(0.0, StationaryClass::Max)])
    };
    let max_curv = stationary_points.iter().map(|s| s.curvature.abs()).fold(m.k / t.powi(3), f64::max);
    let near_critical = stationary_points.iter().any(|s| s.curvature.abs() <= NEAR_CRITICAL_TOL * max_curv);
    Ok(ModalityReport { kind, stationary_points, parameters_used: (alpha, 0.5, t), near_critical })
}

/// Which of the two inflection branches to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

fn check_inflection_range(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return domain(format!("the inflection construction needs 1 < alpha < 2, got {alpha}"));
    }
    Ok(())
}

/// The weight `p = (sin(phi) -+ sqrt(-cos(2 phi))) / (2 sin(phi))` and the
/// stationary location `x* = +-sqrt(-cos(2 phi))` per unit `t`; the upper
/// sign is [`Branch::Plus`]. `1 < alpha < 2`.
pub fn inflection_parameters(alpha: f64, branch: Branch) -> Result<(f64, f64)> {
    check_inflection_range(alpha)?;
    let phi = PI / (2.0 * alpha);
    let q = (-(PI / alpha).cos()).sqrt();
    let s = branch.sign();
    Ok(((phi.sin() - s * q) / (2.0 * phi.sin()), s * q))
}

/// `f''(x*) = (3 cos^2(phi) - 1) / (2 pi t^3 cos(phi) sin^4(phi))` at the
/// stationary point built by [`inflection_parameters`] (either branch).
pub fn second_derivative_at_stationary(alpha: f64, t: f64) -> Result<f64> {
    check_inflection_range(alpha)?;
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time t must be positive, got {t}"));
    }
    let phi = PI / (2.0 * alpha);
    let (s, c) = phi.sin_cos();
    Ok((3.0 * c * c - 1.0) / (2.0 * PI * t.powi(3) * c * s.powi(4)))
}

/// `pi / (2 arccos(1 / sqrt 3))`, where the stationary point of
/// [`inflection_parameters`] becomes an inflection point.
pub fn critical_alpha() -> f64 {
    PI / (2.0 * (1.0 / 3f64.sqrt()).acos())
}

/// Stationary points of the mixture density from the real roots of `P`,
/// classified by the sign of `f''`. Points whose `|f''|` is at most
/// [`INFLECTION_TOL`] times the largest one (or the unit `cos(phi) / (pi t^2)`,
/// whichever is bigger) are degenerate: they are
/// extrema when `f'` changes sign across them and inflections otherwise.
pub fn classify(alpha: f64, p: f64, t: f64) -> Result<ModalityReport> {
    let m = CauchyMixture::new(alpha, p, t)?;
    let roots = real_roots(&m.quintic())?;

    let curvatures: Vec<f64> = roots.iter().map(|&r| m.second_derivative(r * t)).collect();
    // the density's own curvature unit keeps a lone flat point degenerate
    let max_curv = curvatures.iter().fold(m.k / t.powi(3), |a, c| a.max(c.abs()));
    let quintic = m.quintic();
    let mut near_critical = false;
    let mut points = Vec::with_capacity(roots.len());
    for (i, (&r, &curv)) in roots.iter().zip(&curvatures).enumerate() {
        if curv.abs() <= NEAR_CRITICAL_TOL * max_curv {
            near_critical = true;
        }
        let class = if curv.abs() > INFLECTION_TOL * max_curv {
            if curv < 0.0 {
                StationaryClass::Max
            } else {
                StationaryClass::Min
            }
        } else {
            // probe P on both sides, staying clear of neighbouring roots
            let mut delta = 1e-3 * r.abs().max(1.0);
            if i > 0 {
                delta = delta.min(0.4 * (r - roots[i - 1]));
            }
            if i + 1 < roots.len() {
                delta = delta.min(0.4 * (roots[i + 1] - r));
            }
            let left = horner(&quintic, r - delta);
            let right = horner(&quintic, r + delta);
            // f' = -(positive) P
            match (left < 0.0, right < 0.0) {
                (true, false) => StationaryClass::Max,
                (false, true) => StationaryClass::Min,
                _ => StationaryClass::Inflection,
            }
        };
        points.push(StationaryPoint { x: r * t, class, curvature: curv });
    }

    let count = |c| points.iter().filter(|s| s.class == c).count();
    let (n_max, n_min, n_infl) = (count(StationaryClass::Max), count(StationaryClass::Min), count(StationaryClass::Inflection));
    let kind = match (n_max, n_min, n_infl) {
        (1, 0, 0) => ModalityKind::Unimodal,
        (2, 1, 0) => ModalityKind::Bimodal,
        (1, 0, 1) => ModalityKind::InflectionCase,
        _ => {
            return Err(Error::RootFindingFailure(format!(
                "unexpected stationary structure at alpha = {alpha}, p = {p}: {n_max} maxima, {n_min} minima, {n_infl} inflections"
            )))
        }
    };
    Ok(ModalityReport { kind, stationary_points: points, parameters_used: (alpha, p, t), near_critical })
}

fn horner(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn derivative(coef: &[f64]) -> Vec<f64> {
    coef.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect()
}

fn residual_scale(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &a| acc * x.abs() + a.abs())
}

/// Newton iteration on `coef` from `x0`, keeping the iterate with the
/// smallest `|value|`.
fn newton(coef: &[f64], x0: f64) -> f64 {
    let d = derivative(coef);
    let (mut x, mut best, mut best_val) = (x0, x0, horner(coef, x0).abs());
    for _ in 0..60 {
        let (v, dv) = (horner(coef, x), horner(&d, x));
        if v == 0.0 || dv == 0.0 {
            break;
        }
        let step = v / dv;
        x -= step;
        let val = horner(coef, x).abs();
        if val < best_val {
            best = x;
            best_val = val;
        }
        if step.abs() <= 1e-16 * x.abs().max(1e-300) {
            break;
        }
    }
    best
}

/// Distinct real roots of the monic quintic, sorted. Companion-matrix
/// eigenvalues are grouped into clusters; a cluster of size `m` is polished
/// as a simple root of `P^(m-1)` and kept if `P` vanishes there.
fn real_roots(coef: &Quintic) -> Result<Vec<f64>> {
    let mut companion = SMatrix::<f64, 5, 5>::zeros();
    for i in 1..5 {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..5 {
        companion[(i, 4)] = -coef[i];
    }
    let eig = companion.complex_eigenvalues();
    let mut cand: Vec<f64> =
        eig.iter().filter(|z| z.im.abs() <= REAL_TOL * z.re.abs().max(1.0)).map(|z| z.re).collect();
    cand.sort_by(f64::total_cmp);

    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for x in cand {
        match clusters.last_mut() {
            Some(c) if x - c[c.len() - 1] <= REAL_TOL * x.abs().max(1.0) => c.push(x),
            _ => clusters.push(vec![x]),
        }
    }

    let accept = |r: f64| horner(coef, r).abs() <= RESIDUAL_TOL * residual_scale(coef, r);
    let mut roots = Vec::new();
    for cluster in clusters {
        let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
        let mut poly: Vec<f64> = coef.to_vec();
        for _ in 1..cluster.len() {
            poly = derivative(&poly);
        }
        let r = newton(&poly, mean);
        if accept(r) {
            roots.push(r);
            continue;
        }
        if cluster.len() == 1 {
            return Err(Error::RootFindingFailure(format!(
                "real eigenvalue {mean} does not polish to a root (residual {:e})",
                horner(coef, r)
            )));
        }
        // a close pair of distinct real roots, or a complex pair near the axis
        for &x in &cluster {
            let r = newton(coef, x);
            if accept(r) && roots.iter().all(|&q: &f64| (q - r).abs() > 1e-12 * r.abs().max(1.0)) {
                roots.push(r);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}
