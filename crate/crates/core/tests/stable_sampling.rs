//! Sampler checks through empirical characteristic functions, moments and
//! Kolmogorov-Smirnov distances.

use std::f64::consts::PI;

use fresnel_core::mixture_analysis::cauchy_mixture_pdf;
use fresnel_core::quad::{adaptive_lower, Tolerance};
use fresnel_core::special_fn::SubordinatorDensity;
use fresnel_core::stable_sampling::{
    sample_cauchy_mixture, sample_mixture, sample_stable, sample_subordinated, sample_subordinator, MixtureSpec,
    SeededStream,
};
use fresnel_core::subordination::{subordinated_density_char_fn, StableParams, SubordinationSpec};
use fresnel_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn ecf(xs: &[f64], g: f64) -> Complex64 {
    let (mut c, mut s) = (0.0, 0.0);
    for &x in xs {
        let (sn, cs) = (g * x).sin_cos();
        c += cs;
        s += sn;
    }
    Complex64::new(c, s) / xs.len() as f64
}

fn band(n: usize) -> f64 {
    4.0 / (n as f64).sqrt()
}

fn ks_distance(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs())
    })
}

#[test]
fn stable_ecf_within_band() {
    let n = 200_000;
    for &(nu, sigma, beta, mu, t) in &[(1.5, 1.0, 0.6, 0.0, 1.0), (0.7, 0.8, -0.4, 0.3, 2.0), (1.8, 1.3, 1.0, -0.5, 0.5)] {
        let params = StableParams::new(nu, sigma, beta, mu).unwrap();
        let xs = sample_stable(params, t, n, SeededStream::new(11, 0)).unwrap();
        for &g in &[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
            let d = (ecf(&xs, g) - params.char_fn(g, t)).norm();
            assert!(d <= band(n), "nu={nu} beta={beta} g={g}: {d}");
        }
    }
}

#[test]
fn gaussian_variance() {
    let (sigma, t, n) = (0.7, 1.5, 1_000_000);
    let params = StableParams::new(2.0, sigma, 0.0, 0.0).unwrap();
    let xs = sample_stable(params, t, n, SeededStream::new(5, 9)).unwrap();
    let m = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    let want = 2.0 * sigma * sigma * t;
    // the sample variance of a normal law has standard deviation var sqrt(2/(n-1))
    assert!((var - want).abs() <= 4.0 * want * (2.0 / (n - 1) as f64).sqrt(), "{var} vs {want}");
}

#[test]
fn maximally_skewed_below_one_is_positive() {
    let params = StableParams::new(0.5, 1.0, 1.0, 0.0).unwrap();
    let xs = sample_stable(params, 1.0, 100_000, SeededStream::new(3, 3)).unwrap();
    assert!(xs.iter().all(|&x| x > 0.0));
}

#[test]
fn subordinator_matches_its_density() {
    for &(theta, t) in &[(0.5, 1.0), (0.3, 0.8), (0.75, 2.0)] {
        let mut xs = sample_subordinator(theta, t, 20_000, SeededStream::new(8, 1)).unwrap();
        assert!(xs.iter().all(|&x| x >= 0.0));
        let n = xs.len();
        let cdf = |x: f64| {
            if x <= 0.0 {
                return 0.0;
            }
            let h = SubordinatorDensity::new(theta).unwrap();
        let f = |s: f64| if s > 0.0 { h.pdf(s, t).unwrap() } else { 0.0 };
            let e = fresnel_core::quad::adaptive(f, 0.0, x, Tolerance::abs(1e-10)).unwrap();
            e.value
        };
        // thin the sample for the CDF evaluations
        let mut thin: Vec<f64> = xs.iter_mut().step_by(10).map(|x| *x).collect();
        let d = ks_distance(&mut thin, cdf);
        assert!(d < 1.63 / (thin.len() as f64).sqrt(), "theta={theta}: {d} (n={n})");
        // Laplace transform exp(-t lambda^theta)
        for &l in &[0.3, 1.0, 3.0] {
            let e = xs.iter().map(|x| (-l * x).exp()).sum::<f64>() / n as f64;
            assert!((e - (-t * f64::powf(l, theta)).exp()).abs() <= band(n), "theta={theta} l={l}: {e}");
        }
    }
}

#[test]
fn mixture_ecf_matches_stable_mixture() {
    let params = StableParams::new(1.4, 0.9, 0.5, 0.1).unwrap();
    let n = 200_000;
    for &p in &[0.0, 0.25, 1.0] {
        let spec = MixtureSpec::new(params, p, 1.2).unwrap();
        let xs = sample_mixture(spec, n, SeededStream::new(4, 2)).unwrap();
        for &g in &[-1.5, -0.4, 0.7, 2.0] {
            let want = params.char_fn(g, 1.2) * p + params.char_fn(-g, 1.2) * (1.0 - p);
            assert!((ecf(&xs, g) - want).norm() <= band(n), "p={p} g={g}");
        }
    }
}

#[test]
fn symmetric_gaussian_mixture_is_centred() {
    let params = StableParams::new(2.0, 1.0, 0.0, 0.8).unwrap();
    let n = 200_000;
    let xs = sample_mixture(MixtureSpec::new(params, 0.5, 1.0).unwrap(), n, SeededStream::new(1, 1)).unwrap();
    let m = xs.iter().sum::<f64>() / n as f64;
    let sd = (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    assert!(m.abs() <= 4.0 * sd / (n as f64).sqrt(), "{m}");
}

#[test]
fn cauchy_mixture_matches_closed_form() {
    let n = 200_000;
    let mut xs = sample_cauchy_mixture(2.0, 0.5, 1.0, n, SeededStream::new(2, 0)).unwrap();
    let (loc, scale) = ((PI / 4.0).sin(), (PI / 4.0).cos());
    let cdf = |x: f64| 0.5 * (0.5 + ((x - loc) / scale).atan() / PI) + 0.5 * (0.5 + ((x + loc) / scale).atan() / PI);
    // the CDF is checked against the integrated density
    for &x in &[-3.0, -0.4, 0.2, 1.7] {
        let lower = adaptive_lower(|y| cauchy_mixture_pdf(y, 2.0, 0.5, 1.0), x, Tolerance::abs(1e-11)).unwrap().value;
        assert!((lower - cdf(x)).abs() < 1e-9, "x={x}: {lower} vs {}", cdf(x));
    }
    let d = ks_distance(&mut xs, cdf);
    assert!(d < 1.63 / (n as f64).sqrt(), "{d}");

    let mut neg: Vec<f64> = xs.iter().map(|x| -x).collect();
    neg.sort_by(f64::total_cmp);
    // two-sample distance between the sample and its mirror image
    let (mut i, mut j, mut d2) = (0, 0, 0.0f64);
    while i < n && j < n {
        if xs[i] <= neg[j] {
            i += 1;
        } else {
            j += 1;
        }
        d2 = d2.max((i as f64 - j as f64).abs() / n as f64);
    }
    assert!(d2 < 1.63 * (2.0 / n as f64).sqrt(), "{d2}");
}

#[test]
fn cauchy_mixture_components() {
    let (alpha, p, t, n) = (3.0, 0.8, 1.3, 200_000);
    let xs = sample_cauchy_mixture(alpha, p, t, n, SeededStream::new(6, 6)).unwrap();
    let spec = SubordinationSpec::new(alpha, 1.0 / alpha, p).unwrap();
    for &g in &[-2.0, -0.6, 0.3, 1.1] {
        let want = subordinated_density_char_fn(g, t, spec);
        assert!((ecf(&xs, g) - want).norm() <= band(n), "g={g}");
    }
    // with p = 1 the median is the component location
    let mut one = sample_cauchy_mixture(alpha, 1.0, t, 100_001, SeededStream::new(6, 7)).unwrap();
    one.sort_by(f64::total_cmp);
    let loc = t * (PI / (2.0 * alpha)).sin();
    // the median of n Cauchy draws has standard error about pi scale / (2 sqrt n)
    let se = PI * t * (PI / (2.0 * alpha)).cos() / (2.0 * (one.len() as f64).sqrt());
    assert!((one[50_000] - loc).abs() <= 4.0 * se, "{}", one[50_000]);
}

#[test]
fn subordinated_law_in_every_regime() {
    let n = 200_000;
    // stable sign mixture, Cauchy mixture, and the tabulated law where no stable H exists
    for &(a, th, p, t) in &[(3.0, 0.5, 0.3, 1.0), (4.0, 0.4, 0.8, 0.6), (2.0, 0.5, 0.3, 1.5), (2.5, 0.6, 0.5, 1.3)] {
        let spec = SubordinationSpec::new(a, th, p).unwrap();
        let xs = sample_subordinated(spec, t, n, SeededStream::new(8, 1)).unwrap();
        for &g in &[-2.0, -0.9, -0.3, 0.3, 0.9, 2.0] {
            let d = (ecf(&xs, g) - subordinated_density_char_fn(g, t, spec)).norm();
            assert!(d <= band(n), "({a}, {th}, {p}) g={g}: {d}");
        }
    }
}

#[test]
fn no_law_where_the_density_is_negative() {
    let s = SeededStream::new(1, 0);
    for &(a, th, p) in &[(2.0, 0.75, 0.5), (2.5, 0.6, 0.3)] {
        let spec = SubordinationSpec::new(a, th, p).unwrap();
        assert!(matches!(sample_subordinated(spec, 1.0, 10, s), Err(Error::InvalidRegime(_))), "({a}, {th}, {p})");
    }
    assert!(matches!(SubordinationSpec::new(5.0, 0.5, 0.5), Err(Error::InvalidRegime(_))));
}

#[test]
fn errors() {
    let cauchy = StableParams::new(1.0, 1.0, 0.0, 0.0).unwrap();
    assert!(matches!(sample_stable(cauchy, 1.0, 3, SeededStream::new(0, 0)), Err(Error::UnsupportedExponent(_))));
    assert!(matches!(StableParams::new(2.2, 1.0, 0.0, 0.0), Err(Error::InvalidRegime(_))));
    assert!(matches!(StableParams::new(1.5, 1.0, 1.2, 0.0), Err(Error::InvalidRegime(_))));
    assert!(matches!(sample_cauchy_mixture(0.9, 0.5, 1.0, 3, SeededStream::new(0, 0)), Err(Error::Domain(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn streams_are_reproducible(seed in any::<u64>(), id in any::<u64>(), nu in 0.2f64..2.0, beta in -1.0f64..1.0) {
        prop_assume!((nu - 1.0).abs() > 1e-6);
        let params = StableParams::new(nu, 1.0, beta, 0.0).unwrap();
        let a = sample_stable(params, 1.0, 50, SeededStream::new(seed, id)).unwrap();
        let b = sample_stable(params, 1.0, 50, SeededStream::new(seed, id)).unwrap();
        prop_assert_eq!(&a, &b);
        let c = sample_stable(params, 1.0, 50, SeededStream::new(seed, id.wrapping_add(1))).unwrap();
        prop_assert_ne!(a, c);
    }
}
