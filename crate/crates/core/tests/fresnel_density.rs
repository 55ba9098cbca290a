//! Pseudo-density checks. The reference table was computed at 30 digits from
//! `u = (p Ai(-x/c) + (1-p) Ai(x/c)) / c` with each Airy value integrated
//! along the rotated ray where the integrand decays without oscillating.

use std::f64::consts::PI;

use fresnel_core::fresnel_density::{
    char_fn, density, mass, pde_fourier_residual, weibull_representation, FresnelDensity, Method, PseudoParams,
    WeibullMode, PDE_STEP,
};
use fresnel_core::quad::{adaptive_with_breaks, Tolerance};
use fresnel_core::{Error, SeededStream};
use proptest::prelude::*;

/// `(alpha, p, t, x, u)`.
const DENSITY: [[f64; 5]; 64] = [
    [1.5, 0.2, 0.5, -3.0, -1.8468662995455924],
    [1.5, 0.2, 0.5, -0.8, 0.8080763742611763],
    [1.5, 0.2, 0.5, 0.4, 0.18847273905952622],
    [1.5, 0.2, 0.5, 2.5, -0.2736712541806195],
    [1.5, 0.2, 2.0, -3.0, 0.46569377501041237],
    [1.5, 0.2, 2.0, -0.8, 0.14144762197775768],
    [1.5, 0.2, 2.0, 0.4, 0.07887639419305383],
    [1.5, 0.2, 2.0, 2.5, 0.11823134047700724],
    [1.5, 0.7, 0.5, -3.0, -0.6880804309487036],
    [1.5, 0.7, 0.5, -0.8, 0.3423934850841285],
    [1.5, 0.7, 0.5, 0.4, 0.3725092777992499],
    [1.5, 0.7, 0.5, 2.5, -0.983968897933267],
    [1.5, 0.7, 2.0, -3.0, 0.18402722840541758],
    [1.5, 0.7, 2.0, -0.8, 0.0856383033496694],
    [1.5, 0.7, 2.0, 0.4, 0.10539142971517376],
    [1.5, 0.7, 2.0, 2.5, 0.36559322437689074],
    [2.5, 0.2, 0.5, -3.0, -0.30643427013104285],
    [2.5, 0.2, 0.5, -0.8, 0.42624691141479853],
    [2.5, 0.2, 0.5, 0.4, 0.25000053687955776],
    [2.5, 0.2, 0.5, 2.5, 0.013463807850727715],
    [2.5, 0.2, 2.0, -3.0, 0.2233032855739957],
    [2.5, 0.2, 2.0, -0.8, 0.21536133246663774],
    [2.5, 0.2, 2.0, 0.4, 0.15509341299614537],
    [2.5, 0.2, 2.0, 2.5, 0.09408032902829065],
    [2.5, 0.7, 0.5, -3.0, -0.10781323494644607],
    [2.5, 0.7, 0.5, -0.8, 0.24840542609900917],
    [2.5, 0.7, 0.5, 0.4, 0.34598092183543294],
    [2.5, 0.7, 0.5, 2.5, -0.0032404209286658507],
    [2.5, 0.7, 2.0, -3.0, 0.10177856993758853],
    [2.5, 0.7, 2.0, -0.8, 0.15251341207665273],
    [2.5, 0.7, 2.0, 0.4, 0.18724514712364146],
    [2.5, 0.7, 2.0, 2.5, 0.22855421833793116],
    [3.0, 0.2, 0.5, -3.0, -0.1317367338145393],
    [3.0, 0.2, 0.5, -0.8, 0.39009439959853726],
    [3.0, 0.2, 0.5, 0.4, 0.26378703339296167],
    [3.0, 0.2, 0.5, 2.5, 0.037074956620450454],
    [3.0, 0.2, 2.0, -3.0, 0.18677470300826568],
    [3.0, 0.2, 2.0, -0.8, 0.2308992361359211],
    [3.0, 0.2, 2.0, 0.4, 0.17674787884265275],
    [3.0, 0.2, 2.0, 2.5, 0.09202380021323561],
    [3.0, 0.7, 0.5, -3.0, -0.042396964552749494],
    [3.0, 0.7, 0.5, -0.8, 0.24968972305338244],
    [3.0, 0.7, 0.5, 0.4, 0.3405883060185947],
    [3.0, 0.7, 0.5, 2.5, 0.07239510902208708],
    [3.0, 0.7, 2.0, -3.0, 0.09006929160531721],
    [3.0, 0.7, 2.0, -0.8, 0.1709695939181041],
    [3.0, 0.7, 2.0, 0.4, 0.20775428252391467],
    [3.0, 0.7, 2.0, 2.5, 0.20555630523319393],
    [4.0, 0.2, 0.5, -3.0, -0.030563216491149896],
    [4.0, 0.2, 0.5, -0.8, 0.35565124525404307],
    [4.0, 0.2, 0.5, 0.4, 0.27905931875487594],
    [4.0, 0.2, 0.5, 2.5, 0.047500686849445445],
    [4.0, 0.2, 2.0, -3.0, 0.14329634663276405],
    [4.0, 0.2, 2.0, -0.8, 0.2486967159954409],
    [4.0, 0.2, 2.0, 0.4, 0.2056856600605629],
    [4.0, 0.2, 2.0, 2.5, 0.08993576225370885],
    [4.0, 0.7, 0.5, -3.0, -0.005291096993155808],
    [4.0, 0.7, 0.5, -0.8, 0.25600955071813664],
    [4.0, 0.7, 0.5, 0.4, 0.33379266012344533],
    [4.0, 0.7, 0.5, 2.5, 0.09669974089877739],
    [4.0, 0.7, 2.0, -3.0, 0.07570511456376197],
    [4.0, 0.7, 2.0, -0.8, 0.19562492376366747],
    [4.0, 0.7, 2.0, 0.4, 0.2334722305523969],
    [4.0, 0.7, 2.0, 2.5, 0.17684907243305956],
];
fn params(a: f64, p: f64, t: f64) -> PseudoParams {
    PseudoParams::new(a, p, t).unwrap()
}

fn closed(x: f64, t: f64) -> f64 {
    (x * x / (4.0 * t) - PI / 4.0).cos() / (2.0 * (PI * t).sqrt())
}

#[test]
fn matches_rotated_ray_table() {
    for &[a, p, t, x, want] in &DENSITY {
        for m in [Method::Auto, Method::Airy, Method::Quadrature] {
            let got = density(x, params(a, p, t), m).unwrap();
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0), "{m:?} a={a} p={p} t={t} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn closed_form_at_alpha_two() {
    for &t in &[0.5, 1.0, 2.0] {
        let p = PseudoParams::symmetric(2.0, t).unwrap();
        for i in 0..200 {
            let x = -6.0 + 12.0 * i as f64 / 199.0;
            let want = closed(x, t);
            for m in [Method::Auto, Method::Series, Method::Airy, Method::ClosedForm] {
                let got = density(x, p, m).unwrap();
                assert!((got - want).abs() <= 1e-10, "{m:?} t={t} x={x}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn routes_agree_on_grid() {
    for &(a, p, t) in &[(1.5, 0.5, 1.0), (2.5, 0.2, 0.7), (3.0, 0.9, 1.6), (4.0, 0.4, 2.0), (6.0, 0.0, 1.0)] {
        let d = FresnelDensity::new(a, p).unwrap();
        for i in 0..=40 {
            let x = -4.0 + 0.2 * i as f64;
            let s = d.value(x, t, Method::Series).unwrap();
            let q = d.value(x, t, Method::Quadrature).unwrap();
            assert!((s - q).abs() <= 1e-8, "a={a} p={p} t={t} x={x}: {s} vs {q}");
        }
    }
}

#[test]
fn takes_negative_values() {
    let p = PseudoParams::symmetric(2.0, 1.0).unwrap();
    let min = (0..200).map(|i| density(0.05 * i as f64, p, Method::Auto).unwrap()).fold(f64::INFINITY, f64::min);
    assert!(min < -0.2, "{min}");
}

/// Quadrature of the density over `[-R, R]` plus the two tails from the antiderivative.
fn total_mass(p: PseudoParams) -> f64 {
    let d = FresnelDensity::new(p.alpha(), p.p()).unwrap();
    let r = 6.0 * p.t().powf(1.0 / p.alpha());
    let breaks: Vec<f64> = (0..=48).map(|i| -r + r * i as f64 / 24.0).collect();
    let mut f = |x: f64| d.value(x, p.t(), Method::Auto).unwrap();
    let body = adaptive_with_breaks(&mut f, &breaks, Tolerance::new(1e-10, 1e-12)).unwrap().value;
    body + d.mass(f64::NEG_INFINITY, -r, p.t()).unwrap() + d.mass(r, f64::INFINITY, p.t()).unwrap()
}

#[test]
fn unit_mass_and_char_fn_at_zero() {
    for &(a, p, t) in &[
        (1.5, 0.5, 1.0),
        (2.0, 0.5, 0.5),
        (2.0, 0.1, 2.0),
        (2.5, 0.7, 1.0),
        (3.0, 0.5, 1.0),
        (3.0, 1.0, 0.3),
        (4.0, 0.3, 1.5),
        (5.0, 0.5, 1.0),
        (1.2, 0.0, 0.8),
    ] {
        let pp = params(a, p, t);
        let m = total_mass(pp);
        assert!((m - 1.0).abs() <= 1e-6, "a={a} p={p} t={t}: {m}");
        assert_eq!(char_fn(0.0, pp).re, 1.0);
        assert_eq!(char_fn(0.0, pp).im, 0.0);
    }
}

#[test]
fn interval_mass_is_integral_of_density() {
    let pp = params(3.0, 0.3, 1.2);
    let d = FresnelDensity::new(3.0, 0.3).unwrap();
    let mut f = |x: f64| d.value(x, 1.2, Method::Auto).unwrap();
    let q = adaptive_with_breaks(&mut f, &[-2.5, -1.0, 0.0, 1.0, 1.7], Tolerance::new(1e-13, 1e-13)).unwrap().value;
    assert!((mass(-2.5, 1.7, pp).unwrap() - q).abs() < 1e-11);
}

#[test]
fn char_fn_matches_windowed_fourier_transform() {
    // int e^(igx) u(x) e^(-x^2/L^2) dx equals the transform smoothed by a Gaussian of width 2/L
    let l = 8.0;
    for &(a, p) in &[(3.0, 0.3), (2.5, 0.5)] {
        let pp = params(a, p, 1.0);
        let d = FresnelDensity::new(a, p).unwrap();
        let xs: Vec<f64> = (0..=192).map(|i| -6.0 * l + 0.0625 * l * i as f64).collect();
        let ts: Vec<f64> = (0..=64).map(|i| (-12.0 + 0.375 * i as f64) / l).collect();
        for &g in &[0.4, 0.9, 1.3] {
            let mut re = |x: f64| (g * x).cos() * d.value(x, 1.0, Method::Auto).unwrap() * (-(x / l).powi(2)).exp();
            let mut im = |x: f64| (g * x).sin() * d.value(x, 1.0, Method::Auto).unwrap() * (-(x / l).powi(2)).exp();
            let lhs_re = adaptive_with_breaks(&mut re, &xs, Tolerance::new(1e-10, 1e-10)).unwrap().value;
            let lhs_im = adaptive_with_breaks(&mut im, &xs, Tolerance::new(1e-10, 1e-10)).unwrap().value;
            let kernel = |e: f64| l / (2.0 * PI.sqrt()) * (-(l * e / 2.0).powi(2)).exp();
            let mut sre = |e: f64| char_fn(g - e, pp).re * kernel(e);
            let mut sim = |e: f64| char_fn(g - e, pp).im * kernel(e);
            let rhs_re = adaptive_with_breaks(&mut sre, &ts, Tolerance::new(1e-12, 1e-12)).unwrap().value;
            let rhs_im = adaptive_with_breaks(&mut sim, &ts, Tolerance::new(1e-12, 1e-12)).unwrap().value;
            assert!((lhs_re - rhs_re).abs() < 1e-5, "a={a} g={g}: re {lhs_re} vs {rhs_re}");
            assert!((lhs_im - rhs_im).abs() < 1e-5, "a={a} g={g}: im {lhs_im} vs {rhs_im}");
        }
    }
}

#[test]
fn pde_residual_within_truncation_bound() {
    assert_eq!(pde_fourier_residual(&[0.0], params(3.0, 0.5, 1.0)).unwrap(), 0.0);
    assert!(matches!(pde_fourier_residual(&[], params(3.0, 0.5, 1.0)), Err(Error::Domain(_))));
    // central differences err by h^2/12 |c''''| = h^2 |g|^(4 alpha) / 12, which is
    // below 1e-6 |g|^(2 alpha) while |g|^(2 alpha) <= 12; on top of that the
    // difference of three values near 1 carries a rounding error of about 4 eps / h^2
    for &(a, p) in &[(2.0, 0.5), (3.0, 0.5), (2.5, 0.2), (1.5, 0.9)] {
        for i in 1..=30 {
            let g = 0.1 * i as f64 * if i % 2 == 0 { 1.0 } else { -1.0 };
            let w = g.abs().powf(2.0 * a);
            if w > 12.0 {
                continue;
            }
            let r = pde_fourier_residual(&[g], params(a, p, 1.3)).unwrap();
            let rounding = 4.0 * f64::EPSILON / (PDE_STEP * PDE_STEP);
            assert!(r <= 1e-6 * w + rounding, "a={a} g={g}: {r}");
        }
    }
}

#[test]
fn weibull_quadrature_matches_density() {
    for &(a, p, t) in &[(2.0, 0.5, 1.0), (3.0, 0.5, 0.5), (2.5, 0.2, 1.0), (4.0, 0.8, 2.0), (1.5, 0.5, 1.0)] {
        for &x in &[-2.0, -0.5, 0.3, 1.0, 3.0] {
            let want = density(x, params(a, p, t), Method::Auto).unwrap();
            let got = weibull_representation(x, params(a, p, t), WeibullMode::Quadrature).unwrap().value;
            assert!((got - want).abs() <= 1e-7, "a={a} p={p} t={t} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn weibull_expression_for_alpha_two() {
    for &x in &[0.5, 1.0, 2.0, 4.0] {
        for &t in &[0.5, 1.0, 2.0] {
            let got = weibull_representation(x, PseudoParams::symmetric(2.0, t).unwrap(), WeibullMode::Quadrature)
                .unwrap()
                .value;
            assert!((got - closed(x, t)).abs() <= 1e-8, "x={x} t={t}: {got}");
        }
    }
}

#[test]
fn weibull_near_origin_and_at_origin() {
    let pp = PseudoParams::symmetric(3.0, 1.0).unwrap();
    assert!(matches!(weibull_representation(0.0, pp, WeibullMode::Quadrature), Err(Error::Domain(_))));
    let near = weibull_representation(1e-6, pp, WeibullMode::Quadrature).unwrap().value;
    assert!((near - density(0.0, pp, Method::Series).unwrap()).abs() < 1e-5);
}

#[test]
fn weibull_monte_carlo_within_four_sigma() {
    let pp = PseudoParams::symmetric(3.0, 1.0).unwrap();
    let want = density(1.0, pp, Method::Auto).unwrap();
    let mode = WeibullMode::MonteCarlo { n: 1_000_000, stream: SeededStream::new(20, 1) };
    let mc = weibull_representation(1.0, pp, mode).unwrap();
    assert!((mc.value - want).abs() <= 4.0 * mc.std_error, "{mc:?} vs {want}");
    assert_eq!(mc, weibull_representation(1.0, pp, mode).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn self_similar(a in 1.3f64..5.0, p in 0.0f64..1.0, t in 0.2f64..4.0, x in -3.0f64..3.0) {
        let d = FresnelDensity::new(a, p).unwrap();
        let s = t.powf(-1.0 / a);
        let lhs = d.value(x, t, Method::Auto).unwrap();
        let rhs = s * d.value(x * s, 1.0, Method::Auto).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * s.max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn char_fn_bounded(a in 1.01f64..8.0, p in 0.0f64..1.0, t in 0.01f64..10.0, g in -20.0f64..20.0) {
        prop_assert!(char_fn(g, params(a, p, t)).norm() <= 1.0 + 1e-15);
    }

    #[test]
    fn mirror_weight(a in 1.3f64..5.0, p in 0.0f64..1.0, x in -3.0f64..3.0) {
        // u_p(x) = u_(1-p)(-x)
        let l = density(x, params(a, p, 1.0), Method::Auto).unwrap();
        let r = density(-x, params(a, 1.0 - p, 1.0), Method::Auto).unwrap();
        prop_assert!((l - r).abs() <= 1e-12);
    }
}
