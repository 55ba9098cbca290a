use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },

    /// The power series would lose more than the guaranteed absolute accuracy
    /// to cancellation; the caller should use the quadrature route instead.
    #[error("argument outside series working range (peak term {peak:.3e} exceeds guard {guard:.1e})")]
    OutOfSeriesRange { peak: f64, guard: f64 },

    #[error("closed form only exists for alpha = 2, p = 1/2 (got alpha = {alpha}, p = {p})")]
    UnsupportedClosedForm { alpha: f64, p: f64 },

    #[error("quadrature failed: error estimate {estimate:.3e} exceeds tolerance {tol:.3e}")]
    QuadratureFailure { estimate: f64, tol: f64 },

    #[error("cylinder event has {m} time points; supported depth is {cap}")]
    DimensionCap { m: usize, cap: usize },

    #[error("invalid stable regime: {0}")]
    InvalidRegime(String),

    #[error("stable exponent {0} is not supported by this sampler (use the Cauchy sampler for nu = 1)")]
    UnsupportedExponent(f64),

    #[error("root finding failed: {0}")]
    RootFindingFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
