use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not defined for symbols with a radial cutoff")]
    NotSmooth(&'static str),

    #[error("quadrature did not converge: {reason} (error bound {error_bound:e})")]
    Quadrature { reason: String, error_bound: f64 },

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("matrix is not symmetric (largest asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("metric is not positive semidefinite: smaller eigenvalue {value:e} at r = {r}")]
    NotPositive { value: f64, r: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("no eigenvalues found near Landau level {0}")]
    EmptyCluster(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
