//! Integrals `int_0^inf g(s) trig(s x + s^a / a) ds` whose integrand decays
//! only through oscillation.
//!
//! The phase is convex in `s`, with a single stationary point when `x < 0`.
//! The half-line is cut at the zeros of the trigonometric factor on both
//! sides of the stationary point; panels up to a few periods past it are
//! integrated directly, and the alternating sequence of later panel integrals
//! is summed by iterated averaging of its partial sums.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{adaptive, iterated_average, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kernel {
    /// `cos(phi(s))`
    Cos,
    /// `sin(phi(s)) / s`
    SinOverS,
}

/// Panels integrated directly beyond the stationary region.
const DIRECT_PANELS: usize = 8;
/// Initial number of averaged tail panels; doubled on instability.
const TAIL_PANELS: usize = 40;
const MAX_TAIL_PANELS: usize = 640;
/// Refuse arguments that would need more panels than this before the tail.
const MAX_PANELS: usize = 2_000_000;

struct Phase {
    x: f64,
    a: f64,
}

impl Phase {
    #[inline]
    fn value(&self, s: f64) -> f64 {
        s * self.x + s.powf(self.a) / self.a
    }

    #[inline]
    fn slope(&self, s: f64) -> f64 {
        self.x + s.powf(self.a - 1.0)
    }

    /// Solve `phi(s) = level` by Newton iteration from `start`. On either
    /// monotone branch of a convex function the iterates approach the root
    /// from one side, provided `start` lies on the correct side.
    fn newton(&self, level: f64, mut s: f64) -> f64 {
        for _ in 0..100 {
            let d = (self.value(s) - level) / self.slope(s);
            if !d.is_finite() {
                break;
            }
            let next = s - d;
            if (next - s).abs() <= 4.0 * f64::EPSILON * next.abs() {
                return next;
            }
            s = next;
        }
        s
    }

    /// First crossing of `level` to the right of `from`, on the increasing
    /// branch (`phi(from) < level`, `phi' >= 0` on `[from, inf)`).
    fn first_rising(&self, level: f64, from: f64) -> f64 {
        let mut h = from.max(1.0);
        let mut hi = from + h;
        while self.value(hi) < level {
            h *= 2.0;
            hi = from + h;
        }
        self.newton(level, hi)
    }
}

pub(crate) fn oscillatory_integral(x: f64, a: f64, kernel: Kernel, tol: f64) -> Result<f64> {
    let phase = Phase { x, a };
    let offset = match kernel {
        Kernel::Cos => 0.5,
        Kernel::SinOverS => 0.0,
    };
    let g = |s: f64| -> f64 {
        let ph = phase.value(s);
        match kernel {
            Kernel::Cos => ph.cos(),
            Kernel::SinOverS => {
                if s == 0.0 {
                    x
                } else {
                    ph.sin() / s
                }
            }
        }
    };

    // breakpoints of the direct part
    let mut breaks = vec![0.0];
    let mut level_index: f64;
    if x < 0.0 {
        let s0 = (-x).powf(1.0 / (a - 1.0));
        let phi_min = phase.value(s0);
        let lowest = ((phi_min / PI) - offset).floor() + 1.0;
        // descending levels strictly below phi(0) = 0
        let mut m = (-offset).ceil() - 1.0;
        if (m + offset) * PI >= 0.0 {
            m -= 1.0;
        }
        let n_desc = (m - lowest + 1.0).max(0.0);
        if n_desc > MAX_PANELS as f64 {
            return Err(Error::NonConvergent { terms: n_desc as usize });
        }
        let mut s = 0.0;
        while m >= lowest {
            s = phase.newton((m + offset) * PI, s);
            breaks.push(s.min(s0));
            m -= 1.0;
        }
        level_index = lowest;
        let first = phase.first_rising((level_index + offset) * PI, s0);
        breaks.push(first);
    } else {
        level_index = (-offset).floor() + 1.0;
        if (level_index + offset) * PI <= 0.0 {
            level_index += 1.0;
        }
        let first = phase.first_rising((level_index + offset) * PI, 0.0);
        breaks.push(first);
    }
    let next_rising = |prev: f64, level: f64| -> f64 {
        let start = prev + PI / phase.slope(prev);
        phase.newton(level, start)
    };
    for _ in 0..DIRECT_PANELS {
        let prev = *breaks.last().expect("nonempty");
        level_index += 1.0;
        breaks.push(next_rising(prev, (level_index + offset) * PI));
    }

    // per-panel accuracy, floored at the rounding level of the integrand: the
    // phase itself carries an absolute error of eps (|x| s + s^a / a)
    let panel = |lo: f64, hi: f64| -> Result<f64> {
        let sup = match kernel {
            Kernel::Cos => 1.0,
            Kernel::SinOverS if lo > 0.0 => 1.0 / lo,
            Kernel::SinOverS => x.abs() + hi.powf(a - 1.0),
        };
        let phase_size = 1.0 + x.abs() * hi + hi.powf(a) / a;
        let floor = 64.0 * f64::EPSILON * sup * (hi - lo) * phase_size;
        let tol = Tolerance { abs: (1e-3 * tol).max(1e-17).max(floor), rel: 1e-12, max_panels: 200 };
        Ok(adaptive(g, lo, hi, tol)?.value)
    };
    let mut direct = 0.0;
    // sum of panel magnitudes, which sets the rounding floor of the result
    let mut magnitude = 0.0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let v = panel(w[0], w[1])?;
            direct += v;
            magnitude += v.abs();
        }
    }

    // alternating tail
    let mut partials = vec![direct];
    let mut edge = *breaks.last().expect("nonempty");
    let mut n_tail = TAIL_PANELS;
    loop {
        while partials.len() <= n_tail {
            level_index += 1.0;
            let next = next_rising(edge, (level_index + offset) * PI);
            let v = panel(edge, next)?;
            partials.push(partials.last().expect("nonempty") + v);
            magnitude += v.abs();
            edge = next;
        }
        let full = iterated_average(&partials);
        let shorter = iterated_average(&partials[..partials.len() - 1]);
        let shifted = iterated_average(&partials[1..]);
        let err = (full - shorter).abs().max((full - shifted).abs());
        if err <= tol.max(16.0 * f64::EPSILON * magnitude) {
            return Ok(full);
        }
        if n_tail >= MAX_TAIL_PANELS {
            return Err(Error::NonConvergent { terms: n_tail });
        }
        n_tail *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresnel_cosine_integral() {
        // int_0^inf cos(s^2/2) ds = sqrt(pi)/2
        let v = oscillatory_integral(0.0, 2.0, Kernel::Cos, 1e-12).unwrap();
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn dirichlet_limit_for_large_argument() {
        // int_0^inf sin(s x + s^a / a) / s ds -> pi/2 as x -> inf
        let v = oscillatory_integral(200.0, 2.0, Kernel::SinOverS, 1e-12).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn sine_integral_at_zero_argument() {
        // int_0^inf sin(s^a / a) / s ds = pi / (2a)
        for &a in &[1.5, 2.0, 3.0, 4.5] {
            let v = oscillatory_integral(0.0, a, Kernel::SinOverS, 1e-12).unwrap();
            assert!((v - PI / (2.0 * a)).abs() < 1e-10, "a = {a}: {v}");
        }
    }
}
