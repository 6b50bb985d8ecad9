use landau_core::Error;

/// Failure classes with their process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Schema(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Quadrature(_) => 3,
            CliError::Truncation(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Quadrature { .. } | Error::NonConvergence(_) => CliError::Quadrature(e.to_string()),
            Error::Domain(_)
            | Error::NotSmooth(_)
            | Error::Hypothesis(_)
            | Error::Unsupported(_)
            | Error::NotPositive { .. }
            | Error::NotSymmetric(_)
            | Error::Json(_) => CliError::Schema(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}
