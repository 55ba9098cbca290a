use std::fmt;

use fresnel_core::Error;

/// Failure of a CLI run, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments, configuration or output path: exit 2.
    Usage(String),
    /// A numerical routine failed: exit 3.
    Numerical(String),
    /// A validation suite ran and some check failed: exit 1.
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
            CliError::ChecksFailed { failed, total } => write!(f, "{failed} of {total} checks failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::InvalidRegime(_)
            | Error::UnsupportedClosedForm { .. }
            | Error::UnsupportedExponent(_)
            | Error::DimensionCap { .. } => CliError::Usage(e.to_string()),
            Error::NonConvergent { .. }
            | Error::OutOfSeriesRange { .. }
            | Error::QuadratureFailure { .. }
            | Error::RootFindingFailure(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("output: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::ChecksFailed { failed: 1, total: 3 }.exit_code(), 1);
        assert_eq!(CliError::from(Error::Domain("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(Error::InvalidRegime("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(Error::DimensionCap { m: 4, cap: 3 }).exit_code(), 2);
        assert_eq!(CliError::from(Error::QuadratureFailure { estimate: 1.0, tol: 0.1 }).exit_code(), 3);
        assert_eq!(CliError::from(Error::RootFindingFailure("x".into())).exit_code(), 3);
    }
}
