use crate::error::{domain, Result};
use crate::special::quadrature::integrate_log;
use crate::special::LogScalar;

fn check_k(k: f64) -> Result<()> {
    if !(k > -1.0) || !k.is_finite() {
        return domain(format!("moment order must satisfy k > -1, got {k}"));
    }
    Ok(())
}

fn moment_log(k: f64, t: f64) -> f64 {
    if k == 0.0 {
        -t
    } else {
        k * t.ln() - t
    }
}

/// `ln E_ϱ(k)` with `E_ϱ(k) = ∫₀^ϱ e^{−t} t^k dt`.
pub fn log_lower_incomplete(k: f64, rho: f64) -> Result<LogScalar> {
    check_k(k)?;
    if !(rho > 0.0) {
        return domain(format!("upper limit must be positive, got {rho}"));
    }
    let env = |t: f64| moment_log(k, t);
    integrate_log(|t| LogScalar::from_ln(env(t)), env, 0.0, rho, k + 1.0)
}

/// `∫_ϱ^∞ e^{−t} t^k dt`, the complement of [`log_lower_incomplete`].
pub fn log_upper_incomplete(k: f64, rho: f64) -> Result<LogScalar> {
    check_k(k)?;
    if !(rho >= 0.0) || !rho.is_finite() {
        return domain(format!("lower limit must be finite and nonnegative, got {rho}"));
    }
    let env = |t: f64| moment_log(k, t);
    integrate_log(|t| LogScalar::from_ln(env(t)), env, rho, f64::INFINITY, k + 1.0)
}

/// `ln J_{β,μ}(k)` with `J_{β,μ}(k) = ∫₀^∞ e^{−μt^β − t} t^k dt`.
pub fn log_j_integral(beta: f64, mu: f64, k: f64) -> Result<LogScalar> {
    check_k(k)?;
    if !(beta > 0.0) || !beta.is_finite() {
        return domain(format!("beta must be positive, got {beta}"));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return domain(format!("mu must be positive, got {mu}"));
    }
    let env = |t: f64| moment_log(k, t) - mu * t.powf(beta);
    integrate_log(|t| LogScalar::from_ln(env(t)), env, 0.0, f64::INFINITY, k + 1.0)
}
