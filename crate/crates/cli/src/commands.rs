use std::path::Path;

use clap::ValueEnum;
use fresnel_core::mixture_analysis::{
    cauchy_mixture_pdf, classify, inflection_parameters, mode_analysis, pdf_derivative,
    second_derivative_at_stationary, Branch, CauchyMixture, ModalityKind, ModalityReport, StationaryClass,
};
use fresnel_core::signed_measure::{cylinder_measure, CylinderEvent};
use fresnel_core::special_fn::{AiryEvaluator, AiryOrder};
use fresnel_core::stable_sampling::{
    sample_cauchy_mixture, sample_stable, sample_subordinated, sample_subordinator, SeededStream,
};
use fresnel_core::subordination::{SubordinatedQuadrature, SubordinatedSeries, SubordinationSpec};
use fresnel_core::{Error, FresnelDensity, Method, PseudoParams, StableParams};

use crate::args::{
    BranchArg, ClassifyArgs, EvalArgs, EvalMethod, Func, Grid, InflectionArgs, Law, MeasureArgs, ModesArgs,
    SampleArgs,
};
use crate::config::header;
use crate::error::CliError;
use crate::output::{csv, destination, num, write};

type Pairs = Vec<(&'static str, String)>;

fn name<E: ValueEnum>(v: E) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn required(v: Option<f64>, flag: &str, what: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {what}")))
}

fn positive(v: f64, flag: &str) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("--{flag} must be positive and finite, got {v}")))
    }
}

fn unsupported(method: EvalMethod, func: Func) -> CliError {
    CliError::Usage(format!("--method {} does not apply to --fn {}", name(method), name(func)))
}

pub fn eval(a: &EvalArgs, out: Option<&Path>) -> Result<(), CliError> {
    let mut pairs: Pairs = vec![("fn", name(a.func))];
    positive(a.tol, "tol")?;
    let f: Box<dyn Fn(f64) -> Result<f64, Error>> = match a.func {
        Func::Airy => {
            let alpha = required(a.alpha, "alpha", "the Airy function")?;
            let e = AiryEvaluator::new(AiryOrder::new(alpha)?)?;
            pairs.push(("alpha", num(alpha)));
            let tol = a.tol;
            match a.method {
                EvalMethod::Auto => Box::new(move |x| e.value(x, tol)),
                EvalMethod::Series => Box::new(move |x| e.series(x, tol)),
                EvalMethod::Quadrature => Box::new(move |x| e.quadrature(x, tol)),
                m => return Err(unsupported(m, a.func)),
            }
        }
        Func::Density => {
            let alpha = required(a.alpha, "alpha", "the density")?;
            let params = PseudoParams::new(alpha, a.p, a.t)?;
            let d = FresnelDensity::from_params(params)?;
            let method = match a.method {
                EvalMethod::Auto => Method::Auto,
                EvalMethod::Series => Method::Series,
                EvalMethod::Airy => Method::Airy,
                EvalMethod::Quadrature => Method::Quadrature,
                EvalMethod::ClosedForm => Method::ClosedForm,
            };
            if method == Method::ClosedForm {
                d.closed_form(0.0, a.t)?;
            }
            pairs.extend([("alpha", num(alpha)), ("p", num(a.p)), ("t", num(a.t))]);
            let t = a.t;
            Box::new(move |x| d.value(x, t, method))
        }
        Func::Mixture => {
            let alpha = required(a.alpha, "alpha", "the Cauchy mixture")?;
            if a.method != EvalMethod::Auto {
                return Err(unsupported(a.method, a.func));
            }
            CauchyMixture::new(alpha, a.p, a.t)?;
            pairs.extend([("alpha", num(alpha)), ("p", num(a.p)), ("t", num(a.t))]);
            let (p, t) = (a.p, a.t);
            Box::new(move |x| Ok(cauchy_mixture_pdf(x, alpha, p, t)))
        }
        Func::Subordinated => {
            let alpha = required(a.alpha, "alpha", "the subordinated density")?;
            let theta = required(a.theta, "theta", "the subordinated density")?;
            let spec = SubordinationSpec::new(alpha, theta, a.p)?;
            let t = positive(a.t, "t")?;
            pairs.extend([
                ("alpha", num(alpha)),
                ("theta", num(theta)),
                ("p", num(a.p)),
                ("t", num(t)),
            ]);
            match a.method {
                EvalMethod::Series => {
                    let s = SubordinatedSeries::new(spec)?;
                    Box::new(move |x| s.value(x, t))
                }
                EvalMethod::Quadrature => {
                    let q = SubordinatedQuadrature::new(spec)?;
                    Box::new(move |x| q.value(x, t))
                }
                EvalMethod::Auto => {
                    let s = SubordinatedSeries::new(spec).ok();
                    let q = SubordinatedQuadrature::new(spec)?;
                    Box::new(move |x| match s.as_ref().map(|s| s.value(x, t)) {
                        Some(Ok(v)) => Ok(v),
                        _ => q.value(x, t),
                    })
                }
                m => return Err(unsupported(m, a.func)),
            }
        }
    };
    pairs.extend([("method", name(a.method)), ("grid", a.grid.to_string()), ("tol", num(a.tol))]);
    let rows = a.grid.nodes().map(|x| Ok(vec![x, f(x)?])).collect::<Result<Vec<_>, Error>>()?;
    let body = header("eval", &pairs) + &csv(&["x", "value"], rows);
    write(destination(out, "eval").as_deref(), &body)
}

pub fn sample(a: &SampleArgs, out: Option<&Path>) -> Result<(), CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let t = positive(a.t, "t")?;
    let stream = SeededStream::new(a.seed, a.stream);
    let law = a.law();
    let mut pairs: Pairs = vec![("law", name(law))];
    let xs = match law {
        Law::Mixture => {
            let alpha = required(a.alpha, "alpha", "--law mixture")?;
            let theta = required(a.theta, "theta", "--law mixture")?;
            let spec = SubordinationSpec::new(alpha, theta, a.p)?;
            pairs.extend([("alpha", num(alpha)), ("theta", num(theta)), ("p", num(a.p))]);
            sample_subordinated(spec, t, a.n, stream)?
        }
        Law::Stable => {
            let nu = required(a.nu, "nu", "--law stable")?;
            let params = StableParams::new(nu, a.sigma, a.beta, a.mu)?;
            pairs.extend([
                ("nu", num(nu)),
                ("sigma", num(a.sigma)),
                ("beta", num(a.beta)),
                ("mu", num(a.mu)),
            ]);
            sample_stable(params, t, a.n, stream)?
        }
        Law::Subordinator => {
            let theta = required(a.theta, "theta", "--law subordinator")?;
            pairs.push(("theta", num(theta)));
            sample_subordinator(theta, t, a.n, stream)?
        }
        Law::Cauchy => {
            let alpha = required(a.alpha, "alpha", "--law cauchy")?;
            pairs.extend([("alpha", num(alpha)), ("p", num(a.p))]);
            sample_cauchy_mixture(alpha, a.p, t, a.n, stream)?
        }
    };
    pairs.extend([
        ("t", num(t)),
        ("n", a.n.to_string()),
        ("seed", a.seed.to_string()),
        ("stream", a.stream.to_string()),
    ]);
    let body = header("sample", &pairs) + &csv(&["x"], xs.into_iter().map(|x| vec![x]));
    write(destination(out, "sample").as_deref(), &body)
}

fn describe(r: &ModalityReport) -> String {
    let kind = match r.kind {
        ModalityKind::Unimodal => "unimodal",
        ModalityKind::Bimodal => "bimodal",
        ModalityKind::InflectionCase => "inflection",
    };
    let (alpha, p, t) = r.parameters_used;
    let mut s = format!("alpha={}\np={}\nt={}\nkind={kind}\nnear_critical={}\n", num(alpha), num(p), num(t), r.near_critical);
    for sp in &r.stationary_points {
        let class = match sp.class {
            StationaryClass::Max => "max",
            StationaryClass::Min => "min",
            StationaryClass::Inflection => "inflection",
        };
        s.push_str(&format!("stationary x={} class={class} f2={}\n", num(sp.x), num(sp.curvature)));
    }
    s
}

/// Print the report; with a grid, also write the density profile.
fn report_with_profile(
    command: &str,
    report: &str,
    profile: Option<(Grid, f64, f64, f64)>,
    pairs: Pairs,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let dest = destination(out, command);
    if let Some((grid, alpha, p, t)) = profile {
        let Some(dest) = dest else {
            return Err(CliError::Usage("a --grid profile needs --out or FRESNEL_OUT_DIR".into()));
        };
        let rows = grid.nodes().map(|x| vec![x, cauchy_mixture_pdf(x, alpha, p, t)]);
        write(Some(&dest), &(header(command, &pairs) + &csv(&["x", "pdf"], rows)))?;
    }
    write(None, report)
}

pub fn modes(a: &ModesArgs, out: Option<&Path>) -> Result<(), CliError> {
    let r = mode_analysis(a.alpha, a.t)?;
    let mut pairs: Pairs = vec![("alpha", num(a.alpha)), ("t", num(a.t))];
    pairs.extend(a.grid.map(|g| ("grid", g.to_string())));
    report_with_profile("modes", &describe(&r), a.grid.map(|g| (g, a.alpha, 0.5, a.t)), pairs, out)
}

pub fn inflection(a: &InflectionArgs, out: Option<&Path>) -> Result<(), CliError> {
    let branch = match a.branch {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    };
    let (p, x_star) = inflection_parameters(a.alpha, branch)?;
    let f2 = second_derivative_at_stationary(a.alpha, a.t)?;
    let x = x_star * a.t;
    let report = format!(
        "alpha={}\nbranch={}\nt={}\np={}\nx={}\nf1={}\nf2={}\n",
        num(a.alpha),
        name(a.branch),
        num(a.t),
        num(p),
        num(x),
        num(pdf_derivative(x, a.alpha, p, a.t)),
        num(f2)
    );
    let mut pairs: Pairs = vec![("alpha", num(a.alpha)), ("branch", name(a.branch)), ("t", num(a.t))];
    pairs.extend(a.grid.map(|g| ("grid", g.to_string())));
    report_with_profile("inflection", &report, a.grid.map(|g| (g, a.alpha, p, a.t)), pairs, out)
}

pub fn classify_cmd(a: &ClassifyArgs, out: Option<&Path>) -> Result<(), CliError> {
    let r = classify(a.alpha, a.p, a.t)?;
    let mut pairs: Pairs = vec![("alpha", num(a.alpha)), ("p", num(a.p)), ("t", num(a.t))];
    pairs.extend(a.grid.map(|g| ("grid", g.to_string())));
    report_with_profile("classify", &describe(&r), a.grid.map(|g| (g, a.alpha, a.p, a.t)), pairs, out)
}

pub fn measure(a: &MeasureArgs) -> Result<(), CliError> {
    let kernel = FresnelDensity::new(a.alpha, a.p)?;
    let triples: Vec<(f64, f64, f64)> = a.events.iter().map(|e| (e.t, e.a, e.b)).collect();
    let event = CylinderEvent::from_triples(&triples)?;
    let m = cylinder_measure(&event, &kernel, a.tol)?;
    let events: Vec<String> = a.events.iter().map(|e| e.to_string()).collect();
    write(None, &format!("alpha={}\np={}\nevent={}\nmeasure={}\n", num(a.alpha), num(a.p), events.join(";"), num(m)))
}
