//! Samplers for stable laws, one-sided stable subordinators, the sign
//! mixture `Z = +-H`, the two-component Cauchy mixture, and the subordinated
//! Fresnel law in general.
//!
//! Stable draws use the Chambers-Mallows-Stuck transform in the form whose
//! characteristic function is
//!
//! ```text
//! E exp(i g X) = exp(-|g|^nu (1 - i beta sgn(g) tan(pi nu / 2))),   nu != 1,
//! ```
//!
//! which is exactly the parametrization of [`StableParams`], so no shift
//! between conventions is needed: with `V ~ U(-pi/2, pi/2)`, `W ~ Exp(1)`,
//! `B = atan(beta tan(pi nu/2)) / nu` and `S = (1 + beta^2 tan^2(pi nu/2))^(1/(2 nu))`,
//!
//! ```text
//! X = S sin(nu (V + B)) / cos(V)^(1/nu) * (cos(V - nu (V + B)) / W)^((1 - nu)/nu),
//! ```
//!
//! and the law at time `t` is `sigma t^(1/nu) X + mu t`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::subordination::{
    parameter_map, ParameterMap, StableParams, SubordinatedQuadrature, SubordinatedSeries, SubordinationSpec,
};

/// A reproducible random stream: equal `(seed, stream_id)` pairs give
/// bit-identical draws, and distinct `stream_id`s give independent streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeededStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        SeededStream { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// `Z = H` with probability `p` and `-H` with probability `1 - p`, `H` stable at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixtureSpec {
    stable: StableParams,
    p: f64,
    t: f64,
}

impl MixtureSpec {
    pub fn new(stable: StableParams, p: f64, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("sign weight p must lie in [0, 1], got {p}"));
        }
        if !(t > 0.0 && t.is_finite()) {
            return domain(format!("time t must be positive, got {t}"));
        }
        Ok(MixtureSpec { stable, p, t })
    }

    pub fn stable(&self) -> StableParams {
        self.stable
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Precomputed constants of the transform for one parameter set.
struct Cms {
    nu: f64,
    shift: f64,
    scale: f64,
    out_scale: f64,
    drift: f64,
}

impl Cms {
    fn new(params: StableParams, t: f64) -> Result<Self> {
        let nu = params.nu();
        if nu == 1.0 {
            return Err(Error::UnsupportedExponent(nu));
        }
        if !(t > 0.0 && t.is_finite()) {
            return domain(format!("time t must be positive, got {t}"));
        }
        let zeta = params.beta() * (PI * nu / 2.0).tan();
        Ok(Cms {
            nu,
            shift: zeta.atan() / nu,
            scale: (1.0 + zeta * zeta).powf(1.0 / (2.0 * nu)),
            out_scale: params.sigma() * t.powf(1.0 / nu),
            drift: params.mu() * t,
        })
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        let e: f64 = rng.sample(Open01);
        let v = PI * (u - 0.5);
        let w = -e.ln();
        let nu = self.nu;
        let arg = nu * (v + self.shift);
        let x = self.scale * arg.sin() / v.cos().powf(1.0 / nu) * ((v - arg).cos() / w).powf((1.0 - nu) / nu);
        self.out_scale * x + self.drift
    }
}

/// `n` draws of the stable law at time `t`.
pub fn sample_stable(params: StableParams, t: f64, n: usize, stream: SeededStream) -> Result<Vec<f64>> {
    let cms = Cms::new(params, t)?;
    let mut rng = stream.rng();
    Ok((0..n).map(|_| cms.draw(&mut rng)).collect())
}

/// `n` draws of the sign mixture: `+H` with probability `p`, else `-H`.
pub fn sample_mixture(spec: MixtureSpec, n: usize, stream: SeededStream) -> Result<Vec<f64>> {
    let cms = Cms::new(spec.stable, spec.t)?;
    let mut rng = stream.rng();
    Ok((0..n)
        .map(|_| {
            let h = cms.draw(&mut rng);
            let u: f64 = rng.sample(Open01);
            if u < spec.p {
                h
            } else {
                -h
            }
        })
        .collect())
}

/// `n` draws of the one-sided stable subordinator with Laplace transform
/// `exp(-t lambda^theta)`: the stable law with `nu = theta`, `beta = 1`,
/// `sigma = cos(pi theta / 2)^(1/theta)`.
pub fn sample_subordinator(theta: f64, t: f64, n: usize, stream: SeededStream) -> Result<Vec<f64>> {
    if !(theta > 0.0 && theta < 1.0) {
        return domain(format!("subordinator exponent must lie in (0, 1), got {theta}"));
    }
    let params = StableParams::new(theta, (FRAC_PI_2 * theta).cos().powf(1.0 / theta), 1.0, 0.0)?;
    let mut out = sample_stable(params, t, n, stream)?;
    // the transform is positive in exact arithmetic; clamp rounding noise
    for v in out.iter_mut() {
        *v = v.max(0.0);
    }
    Ok(out)
}

/// `n` draws from the mixture with weight `p` on the Cauchy law centred at
/// `+t sin(pi/2alpha)` and `1 - p` on the one centred at `-t sin(pi/2alpha)`,
/// both of scale `t cos(pi/2alpha)`.
pub fn sample_cauchy_mixture(alpha: f64, p: f64, t: f64, n: usize, stream: SeededStream) -> Result<Vec<f64>> {
    if !(alpha > 1.0) {
        return domain(format!("order alpha must exceed 1, got {alpha}"));
    }
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("weight p must lie in [0, 1], got {p}"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time t must be positive, got {t}"));
    }
    let phi = PI / (2.0 * alpha);
    let (loc, scale) = (t * phi.sin(), t * phi.cos());
    let mut rng = stream.rng();
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            let c = scale * (PI * (u - 0.5)).tan();
            let s: f64 = rng.sample(Open01);
            if s < p {
                loc + c
            } else {
                -loc + c
            }
        })
        .collect())
}

/// `n` draws of `Y(t)`, the Fresnel pseudoprocess with weight `p` time-changed
/// by the `theta`-stable subordinator. Its law is the sign mixture with weight
/// `1 - p` on `+H` when [`parameter_map`] yields a stable `H`, the Cauchy
/// mixture when `alpha theta = 1`, and otherwise is drawn by inverting a
/// tabulated distribution function of the subordinated density.
///
/// Fails with `InvalidRegime` when the density takes negative values, so that
/// no law exists.
pub fn sample_subordinated(spec: SubordinationSpec, t: f64, n: usize, stream: SeededStream) -> Result<Vec<f64>> {
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time t must be positive, got {t}"));
    }
    match parameter_map(spec) {
        Ok(ParameterMap::Stable(h)) => sample_mixture(MixtureSpec::new(h, 1.0 - spec.p(), t)?, n, stream),
        Ok(ParameterMap::CauchyCase) => sample_cauchy_mixture(spec.alpha(), spec.p(), t, n, stream),
        Err(Error::InvalidRegime(_)) => TabulatedLaw::new(spec)?.sample(t, n, stream),
        Err(e) => Err(e),
    }
}

/// Half-width of the uniformly tabulated core at unit time.
const CORE: f64 = 8.0;
const CORE_STEP: f64 = 1.0 / 16.0;
/// The table ends here; beyond it the tails are Pareto with exponent `nu`.
const TABLE_EDGE: f64 = 24.0;
const OUTER_RATIO: f64 = 1.12;

/// Distribution of `Y(1)` on Simpson cells, with power-law tails
/// `c |x|^(-1-nu)` fitted at the table edge. The next tail term is smaller by
/// a factor of order `TABLE_EDGE^(-nu)`.
struct TabulatedLaw {
    nu: f64,
    /// cell edges, and the density at edges and midpoints
    edges: Vec<f64>,
    at_edges: Vec<f64>,
    at_mids: Vec<f64>,
    /// cumulative mass at each edge, starting with the left tail
    cumulative: Vec<f64>,
    right_tail: f64,
}

impl TabulatedLaw {
    fn new(spec: SubordinationSpec) -> Result<Self> {
        let nu = spec.nu();
        let series = SubordinatedSeries::new(spec).ok();
        let quadrature = SubordinatedQuadrature::new(spec)?;
        let symmetric = spec.p() == 0.5;
        let density = |x: f64| -> Result<f64> {
            let x = if symmetric { x.abs() } else { x };
            match series.as_ref().map(|s| s.value(x, 1.0)) {
                Some(Ok(v)) => Ok(v),
                _ => quadrature.value(x, 1.0),
            }
        };

        let mut right = Vec::new();
        let mut x = 0.0;
        while x < CORE - 1e-12 {
            x += CORE_STEP;
            right.push(x);
        }
        while x < TABLE_EDGE {
            x = (x * OUTER_RATIO).min(TABLE_EDGE);
            right.push(x);
        }
        let edges: Vec<f64> = right.iter().rev().map(|x| -x).chain(std::iter::once(0.0)).chain(right.iter().copied()).collect();

        let mut cache: Vec<(f64, f64)> = Vec::new();
        let mut eval = |x: f64| -> Result<f64> {
            let key = if symmetric { x.abs() } else { x };
            if let Some(&(_, v)) = cache.iter().find(|c| c.0 == key) {
                return Ok(v);
            }
            let v = density(key)?;
            if v < 0.0 {
                return Err(Error::InvalidRegime(format!(
                    "alpha = {}, theta = {}, p = {}: the subordinated density is {v:.3e} at x = {x}",
                    spec.alpha(),
                    spec.theta(),
                    spec.p()
                )));
            }
            cache.push((key, v));
            Ok(v)
        };
        let at_edges = edges.iter().map(|&x| eval(x)).collect::<Result<Vec<_>>>()?;
        let at_mids = edges.windows(2).map(|w| eval(0.5 * (w[0] + w[1]))).collect::<Result<Vec<_>>>()?;

        let tail = |f: f64| f * TABLE_EDGE / nu;
        let left_tail = tail(at_edges[0]);
        let right_tail = tail(*at_edges.last().expect("nonempty"));
        let mut cumulative = vec![left_tail];
        for (i, w) in edges.windows(2).enumerate() {
            let cell = (w[1] - w[0]) * (at_edges[i] + 4.0 * at_mids[i] + at_edges[i + 1]) / 6.0;
            cumulative.push(cumulative[i] + cell);
        }
        let total = cumulative.last().expect("nonempty") + right_tail;
        if (total - 1.0).abs() > 1e-3 {
            return Err(Error::QuadratureFailure { estimate: (total - 1.0).abs(), tol: 1e-3 });
        }
        Ok(TabulatedLaw { nu, edges, at_edges, at_mids, cumulative, right_tail })
    }

    fn draw(&self, u: f64) -> f64 {
        let last = *self.cumulative.last().expect("nonempty");
        let total = last + self.right_tail;
        let r = u * total;
        if r < self.cumulative[0] {
            return -TABLE_EDGE * (r / self.cumulative[0]).powf(-1.0 / self.nu);
        }
        if r >= last {
            return TABLE_EDGE * ((total - r) / self.right_tail).powf(-1.0 / self.nu);
        }
        let i = self.cumulative.partition_point(|&c| c <= r) - 1;
        let (lo, h) = (self.edges[i], self.edges[i + 1] - self.edges[i]);
        let (f0, fm, f1) = (self.at_edges[i], self.at_mids[i], self.at_edges[i + 1]);
        // quadratic density through the three values, integrated in closed form
        let b = (4.0 * fm - 3.0 * f0 - f1) / h;
        let a = 2.0 * (f1 - 2.0 * fm + f0) / (h * h);
        let mass = |s: f64| s * (f0 + s * (b / 2.0 + s * a / 3.0));
        let target = r - self.cumulative[i];
        let (mut s0, mut s1) = (0.0, h);
        for _ in 0..60 {
            let mid = 0.5 * (s0 + s1);
            if mass(mid) < target {
                s0 = mid;
            } else {
                s1 = mid;
            }
        }
        lo + 0.5 * (s0 + s1)
    }

    /// `Y(t) = t^(1/nu) Y(1)` in law.
    fn sample(&self, t: f64, n: usize, stream: SeededStream) -> Result<Vec<f64>> {
        let scale = t.powf(1.0 / self.nu);
        let mut rng = stream.rng();
        Ok((0..n).map(|_| scale * self.draw(rng.sample(Open01))).collect())
    }
}
