//! Special functions and the log-domain quadrature engine.

mod gamma;
mod integrals;
mod laguerre;
mod log_scalar;
pub mod quadrature;

pub use gamma::{ln_binomial, log_factorial, log_gamma};
pub use integrals::{log_j_integral, log_lower_incomplete, log_upper_incomplete};
pub use laguerre::{laguerre, laguerre_coefficients, laguerre_real, LaguerreParams};
pub use log_scalar::LogScalar;
