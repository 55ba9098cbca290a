//! Double-double arithmetic (an unevaluated sum `hi + lo` of two `f64`s,
//! roughly 32 significant digits).
//!
//! Only the handful of operations needed by the gamma power series are
//! provided: the four basic operations, `exp`, `ln`, `sin(pi x)` and
//! `ln Gamma`. The series for the generalized Airy function has terms many
//! orders of magnitude larger than its sum, so it is accumulated here rather
//! than in plain `f64`.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
pub(crate) const LN_2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
const HALF_LN_2PI: Dd = Dd { hi: 0.9189385332046728, lo: -3.8782941580672414e-17 };

/// `B_{2j} / (2j (2j-1))` for j = 1..=14, as exact integer ratios.
const STIRLING: [(f64, f64); 14] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
    (657931.0, 300.0),
    (-3392780147.0, 93960.0),
];

/// Arguments below this are shifted upward before the Stirling series is used.
const STIRLING_MIN: f64 = 32.0;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Exact `a + b` of two doubles.
    #[inline]
    pub fn sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// `num / den` rounded to double-double.
    #[cfg(test)]
    pub fn ratio(num: f64, den: f64) -> Dd {
        Dd::new(num) / Dd::new(den)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let f = f - e + self.lo;
        let q2 = (s + f) / b;
        Dd::renorm(q1, q2)
    }

    /// Multiplication by an exact power of two.
    #[inline]
    fn scale_pow2(self, s: f64) -> Dd {
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    /// Nearest integer to the value (ties are irrelevant here).
    #[inline]
    fn round(self) -> f64 {
        let r = self.hi.round();
        if r == self.hi {
            // hi is an integer; lo decides which side of it we are on
            r + self.lo.round()
        } else {
            r
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = (self - LN_2.mul_f64(k)).scale_pow2(1.0 / 1024.0);
        // expm1 of the reduced argument; |r| < 3.5e-4 so 10 terms reach 1e-37
        let mut sum = r;
        let mut term = r;
        for i in 2..=10 {
            term = (term * r).div_f64(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * (sum + Dd::new(2.0));
        }
        let e = sum + Dd::ONE;
        // 2^k may not be representable on its own near the overflow edge
        let k = k as i32;
        let half = k / 2;
        e.scale_pow2(2f64.powi(half)).scale_pow2(2f64.powi(k - half))
    }

    /// Natural logarithm; `self` must be positive.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "ln of non-positive double-double");
        let x = Dd::new(self.hi.ln());
        x + self * (-x).exp() - Dd::ONE
    }

    /// `sin(pi * self)`, exact argument reduction included.
    pub fn sin_pi(self) -> Dd {
        let n = (self.mul_f64(0.5)).round();
        let mut r = self - Dd::new(2.0 * n);
        if r.hi > 0.5 {
            r = Dd::ONE - r;
        } else if r.hi < -0.5 {
            r = -Dd::ONE - r;
        }
        if r.hi.abs() <= 0.25 {
            sin_taylor(PI * r)
        } else {
            let c = cos_taylor(PI * (Dd::new(0.5) - r.abs()));
            if r.hi < 0.0 {
                -c
            } else {
                c
            }
        }
    }

    /// `ln Gamma(self)` for positive arguments.
    pub fn ln_gamma(self) -> Dd {
        debug_assert!(self.hi > 0.0, "ln_gamma needs a positive argument");
        let mut w = self;
        let mut shift = Dd::ONE;
        let mut shifted = false;
        while w.hi < STIRLING_MIN {
            shift = shift * w;
            w = w + Dd::ONE;
            shifted = true;
        }
        let inv = Dd::ONE / w;
        let inv2 = inv * inv;
        let mut pow = inv;
        let mut corr = Dd::ZERO;
        for &(num, den) in STIRLING.iter() {
            corr = corr + (pow * Dd::new(num)).div_f64(den);
            pow = pow * inv2;
        }
        let main = (w - Dd::new(0.5)) * w.ln() - w + HALF_LN_2PI + corr;
        if shifted {
            main - shift.ln()
        } else {
            main
        }
    }
}

fn sin_taylor(x: Dd) -> Dd {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut j = 1.0;
    loop {
        term = -(term * x2).div_f64((2.0 * j) * (2.0 * j + 1.0));
        sum = sum + term;
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) || j > 30.0 {
            return sum;
        }
        j += 1.0;
    }
}

fn cos_taylor(x: Dd) -> Dd {
    let x2 = x * x;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut j = 1.0;
    loop {
        term = -(term * x2).div_f64((2.0 * j - 1.0) * (2.0 * j));
        sum = sum + term;
        if term.hi.abs() < 1e-34 || j > 30.0 {
            return sum;
        }
        j += 1.0;
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Dd::renorm(q1, q2) + Dd::new(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values from a 40-digit evaluation at the f64 inputs, split into (hi, lo)
    fn close(got: Dd, want: (f64, f64), rel: f64) {
        let err = (got - Dd { hi: want.0, lo: want.1 }).to_f64().abs();
        assert!(
            err <= rel * want.0.abs(),
            "got ({:e}, {:e}) want ({:e}, {:e}) err {:e}",
            got.hi,
            got.lo,
            want.0,
            want.1,
            err
        );
    }

    #[test]
    fn exp_and_ln() {
        close(Dd::ONE.exp(), (std::f64::consts::E, 1.4456468917292502e-16), 1e-30);
        close(Dd::new(-20.5).exp(), (1.2501528663867426e-09, 6.448235878237776e-26), 1e-29);
        close(Dd::new(10.0).ln(), (std::f64::consts::LN_10, -2.1707562233822494e-16), 1e-30);
        let x = Dd::new(123.456);
        assert!((x.ln().exp() - x).to_f64().abs() < 1e-28 * 123.456);
    }

    #[test]
    fn sin_pi_reduction() {
        close(Dd::new(0.3).sin_pi(), (0.8090169943749475, -4.766175266906226e-17), 1e-30);
        close(Dd::new(1.7).sin_pi(), (-0.8090169943749475, -5.4844130584186386e-17), 1e-30);
        assert!(Dd::new(4.0).sin_pi().to_f64().abs() < 1e-30);
        close(Dd::new(1000.5).sin_pi(), (1.0, 0.0), 1e-31);
    }

    #[test]
    fn ln_gamma_values() {
        close(Dd::ratio(1.0, 3.0).ln_gamma(), (0.9854206469277671, -2.736957545619676e-17), 1e-28);
        close(Dd::new(100.25).ln_gamma(), (360.28455963776423, 2.6479351199479714e-15), 1e-31);
        close(Dd::new(0.001).ln_gamma(), (6.907178885383853, 2.777556825107376e-16), 1e-28);
        // ln Gamma(n + 1) = ln n!
        let mut lf = Dd::ZERO;
        for n in 1..=40 {
            lf = lf + Dd::new(n as f64).ln();
            let g = Dd::new(n as f64 + 1.0).ln_gamma();
            assert!((g - lf).to_f64().abs() < 1e-28 * lf.hi.max(1.0), "n = {n}");
        }
    }

    #[test]
    fn division_roundtrip() {
        let a = Dd::new(7.0) / Dd::new(3.0);
        assert!((a * Dd::new(3.0) - Dd::new(7.0)).to_f64().abs() < 1e-31);
        let b = Dd::new(1.0).div_f64(49.0);
        assert!((b.mul_f64(49.0) - Dd::ONE).to_f64().abs() < 1e-31);
    }
}
