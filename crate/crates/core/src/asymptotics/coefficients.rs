//! Laplace-point minimizers `s_<(ε)`, `s_>(ε)` and the Taylor coefficients of
//! `f(ε) = F(s_<(ε); ε)` and `g(ε) = G(s_>(ε); ε)`, where
//! `F(s; ε) = s − ln s + εμs^β` and `G(s; ε) = μs^β − ln s + εs`.

use serde::{Deserialize, Serialize};

use crate::asymptotics::series::{PowerSeries, MAX_ORDER};
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimizerKind {
    /// `s = 1 − εβμ s^β`, minimizer of `F`.
    F,
    /// `βμ s^β = 1 − εs`, minimizer of `G`.
    G,
}

fn check_params(beta: f64, mu: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("beta must be positive, got {beta}"));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return domain(format!("mu must be positive, got {mu}"));
    }
    Ok(())
}

/// `F(s; ε)` or `G(s; ε)`.
pub fn objective(kind: MinimizerKind, beta: f64, mu: f64, eps: f64, s: f64) -> f64 {
    match kind {
        MinimizerKind::F => s - s.ln() + eps * mu * s.powf(beta),
        MinimizerKind::G => mu * s.powf(beta) - s.ln() + eps * s,
    }
}

/// `∂/∂s` of [`objective`].
pub fn objective_slope(kind: MinimizerKind, beta: f64, mu: f64, eps: f64, s: f64) -> f64 {
    match kind {
        MinimizerKind::F => 1.0 - 1.0 / s + eps * mu * beta * s.powf(beta - 1.0),
        MinimizerKind::G => mu * beta * s.powf(beta - 1.0) - 1.0 / s + eps,
    }
}

/// Positive root of the stationarity equation near its `ε = 0` value.
pub fn solve_minimizer(kind: MinimizerKind, beta: f64, mu: f64, eps: f64) -> Result<f64> {
    check_params(beta, mu)?;
    if !eps.is_finite() {
        return domain("epsilon must be finite");
    }
    // φ(s) = 0 is the stationarity equation multiplied out; the fixed-point form
    // must contract at the ε = 0 root.
    let (s0, contraction) = match kind {
        MinimizerKind::F => (1.0, eps.abs() * beta * beta * mu),
        MinimizerKind::G => {
            let s0 = (beta * mu).powf(-1.0 / beta);
            if 1.0 - eps * s0 <= 0.0 {
                return domain(format!("epsilon {eps} too large for the G minimizer"));
            }
            (s0, eps.abs() * s0 / (beta * (1.0 - eps * s0)))
        }
    };
    if contraction >= 1.0 {
        return domain(format!(
            "epsilon {eps} outside the contraction region (factor {contraction})"
        ));
    }
    let phi = |s: f64| match kind {
        MinimizerKind::F => (
            s - 1.0 + eps * beta * mu * s.powf(beta),
            1.0 + eps * beta * beta * mu * s.powf(beta - 1.0),
        ),
        MinimizerKind::G => (
            beta * mu * s.powf(beta) + eps * s - 1.0,
            beta * beta * mu * s.powf(beta - 1.0) + eps,
        ),
    };
    let mut s = s0;
    for _ in 0..200 {
        let (v, dv) = phi(s);
        let mut next = s - v / dv;
        if !(next > 0.0) {
            next = 0.5 * s;
        }
        let done = (next - s).abs() <= 1e-15 * s;
        s = next;
        if done {
            let slope = objective_slope(kind, beta, mu, eps, s);
            if slope.abs() > 1e-10 {
                return Err(Error::NonConvergence(format!("stationarity residual {slope:e}")));
            }
            return Ok(s);
        }
    }
    Err(Error::NonConvergence(format!(
        "minimizer for beta={beta}, mu={mu}, eps={eps}"
    )))
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return domain(format!("series order {order} exceeds {MAX_ORDER}"));
    }
    Ok(())
}

/// Iterates `s ↦ next(s)` on truncated series until coefficients settle.
fn fixed_point(start: PowerSeries, next: impl Fn(&PowerSeries) -> Result<PowerSeries>) -> Result<PowerSeries> {
    let mut s = start;
    let order = s.order();
    // each pass fixes one more order exactly
    for _ in 0..order + 4 {
        let n = next(&s)?;
        let change = n.max_abs_diff(&s);
        s = n;
        if change <= 1e-14 * s.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs())) {
            return Ok(s);
        }
    }
    let n = next(&s)?;
    if n.max_abs_diff(&s) > 1e-12 {
        return Err(Error::NonConvergence("formal fixed-point iteration".into()));
    }
    Ok(n)
}

/// Taylor coefficients `f₀..f_J` of `f(ε) = F(s_<(ε); ε)` for `β ∈ (0,1)`.
pub fn f_series(beta: f64, mu: f64, order: usize) -> Result<PowerSeries> {
    check_params(beta, mu)?;
    if !(beta < 1.0) {
        return domain(format!("f coefficients need beta in (0,1), got {beta}"));
    }
    check_order(order)?;
    let s = fixed_point(PowerSeries::constant(1.0, order), |s| {
        Ok(s.powf(beta)?.mul_eps().scale(-beta * mu).add_const(1.0))
    })?;
    Ok(s.sub(&s.ln()?).add(&s.powf(beta)?.mul_eps().scale(mu)))
}

/// Taylor coefficients `g₀..g_J` of `g(ε) = G(s_>(ε); ε)` for `β > 1`.
pub fn g_series(beta: f64, mu: f64, order: usize) -> Result<PowerSeries> {
    check_params(beta, mu)?;
    if !(beta > 1.0) {
        return domain(format!("g coefficients need beta > 1, got {beta}"));
    }
    check_order(order)?;
    let s0 = (beta * mu).powf(-1.0 / beta);
    let s = fixed_point(PowerSeries::constant(s0, order), |s| {
        Ok(s.mul_eps().scale(-1.0).add_const(1.0).powf(1.0 / beta)?.scale(s0))
    })?;
    Ok(s.powf(beta)?.scale(mu).sub(&s.ln()?).add(&s.mul_eps()))
}
