use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::num;

#[derive(Parser, Debug)]
#[command(name = "fresnel", version, about = "Fresnel pseudoprocess densities, samplers and mixture analysis")]
#[command(args_override_self = true)]
pub struct Cli {
    /// File of `key=value` lines mirroring the long flags; a `#` prefix is
    /// allowed, so the header of an output file can be fed back. Flags given
    /// on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output file. Relative paths resolve against `$FRESNEL_OUT_DIR` when set;
    /// without this flag output goes to `$FRESNEL_OUT_DIR/<command>.csv`, or to
    /// stdout when the variable is unset.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate a function on a grid as `x,value` CSV.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Run a validation suite; exit status 1 if any check fails.
    Validate(ValidateArgs),
    /// Draw samples as single-column CSV.
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Modes of the symmetric Cauchy mixture.
    Modes(ModesArgs),
    /// Parameters at which the asymmetric Cauchy mixture has an inflection point.
    Inflection(InflectionArgs),
    /// Stationary points of the Cauchy mixture density.
    Classify(ClassifyArgs),
    /// Signed measure of a cylinder event.
    #[command(allow_negative_numbers = true)]
    Measure(MeasureArgs),
}

pub const COMMANDS: [&str; 7] = ["eval", "validate", "sample", "modes", "inflection", "classify", "measure"];

/// `min:max:points`, equally spaced and including both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let last = self.points - 1;
        (0..self.points).map(move |i| (self.min * (last - i) as f64 + self.max * i as f64) / last as f64)
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, points] = parts[..] else {
            return Err(format!("grid must be min:max:points, got {s:?}"));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("bad grid bound {v:?}: {e}"));
        let (min, max) = (num(min)?, num(max)?);
        let points: usize = points.trim().parse().map_err(|e| format!("bad grid point count {points:?}: {e}"))?;
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("grid needs finite min < max, got {min}:{max}"));
        }
        if points < 2 {
            return Err(format!("grid needs at least 2 points, got {points}"));
        }
        Ok(Grid { min, max, points })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", num(self.min), num(self.max), self.points)
    }
}

/// One cylinder constraint `t,a,b`; `a` and `b` may be `-inf` / `inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EventBox {
    pub t: f64,
    pub a: f64,
    pub b: f64,
}

impl FromStr for EventBox {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad event field {x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        let [t, a, b] = v[..] else {
            return Err(format!("event must be t,a,b, got {s:?}"));
        };
        Ok(EventBox { t, a, b })
    }
}

impl fmt::Display for EventBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", num(self.t), num(self.a), num(self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Func {
    Airy,
    Density,
    Mixture,
    Subordinated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Auto,
    Series,
    Airy,
    Quadrature,
    ClosedForm,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub func: Func,
    /// Order `alpha > 1` (not used by `--fn mixture` through `theta`).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Subordinator exponent, for `--fn subordinated`.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// `auto`, `series`, `airy`, `quadrature` or `closed-form` for densities;
    /// `auto`, `series` or `quadrature` for the Airy function and the
    /// subordinated density.
    #[arg(long, value_enum, default_value_t = EvalMethod::Auto)]
    pub method: EvalMethod,
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,
    /// Absolute accuracy requested from the Airy evaluators.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Airy,
    Density,
    Weibull,
    Subordination,
    CfMc,
    Mixture,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Sample size for `cf-mc`.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    /// The subordinated process `Y(t)` for `(alpha, theta, p)`.
    Mixture,
    /// A stable law `(nu, sigma, beta, mu)`.
    Stable,
    /// The one-sided `theta`-stable subordinator.
    Subordinator,
    /// The two-component Cauchy mixture for `(alpha, p)`.
    Cauchy,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum, required_unless_present = "mixture")]
    pub law: Option<Law>,
    /// Shorthand for `--law mixture`.
    #[arg(long, conflicts_with = "law")]
    pub mixture: bool,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
}

impl SampleArgs {
    pub fn law(&self) -> Law {
        if self.mixture {
            Law::Mixture
        } else {
            self.law.unwrap_or(Law::Mixture)
        }
    }
}

#[derive(Args, Debug)]
pub struct ModesArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Also write the density on this grid.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Args, Debug)]
pub struct InflectionArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// `t,a,b`; repeat once per time point, in increasing time order.
    #[arg(long = "event", required = true, allow_hyphen_values = true)]
    pub events: Vec<EventBox>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}
