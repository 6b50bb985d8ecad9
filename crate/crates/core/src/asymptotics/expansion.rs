use std::fmt;

use serde::{Deserialize, Serialize};

use crate::asymptotics::coefficients::{f_series, g_series};
use crate::error::{domain, Result};
use crate::special::{log_factorial, log_gamma, log_j_integral, log_lower_incomplete, LogScalar};

/// Size class of what an expansion leaves out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Remainder {
    #[serde(rename = "O(log k)")]
    OLogK,
    #[serde(rename = "O(k)")]
    OK,
    #[serde(rename = "O(1)")]
    O1,
    #[serde(rename = "o(k)")]
    LittleOK,
}

impl Remainder {
    /// Size of the band at `k`, up to its unknown constant.
    pub fn scale_at(self, k: f64) -> f64 {
        match self {
            Remainder::OLogK => k.ln().max(1.0),
            Remainder::OK | Remainder::LittleOK => k,
            Remainder::O1 => 1.0,
        }
    }
}

impl fmt::Display for Remainder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Remainder::OLogK => "O(log k)",
            Remainder::OK => "O(k)",
            Remainder::O1 => "O(1)",
            Remainder::LittleOK => "o(k)",
        })
    }
}

/// `α k ln k + Σ c_e k^e` plus a remainder class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticExpansion {
    kloglog: f64,
    terms: Vec<(f64, f64)>,
    remainder: Remainder,
}

impl AsymptoticExpansion {
    /// Terms are sorted by decreasing exponent; equal exponents are merged.
    pub fn new(kloglog: f64, mut terms: Vec<(f64, f64)>, remainder: Remainder) -> Self {
        terms.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => merged.push((e, c)),
            }
        }
        Self {
            kloglog,
            terms: merged,
            remainder,
        }
    }

    pub fn kloglog(&self) -> f64 {
        self.kloglog
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn remainder(&self) -> Remainder {
        self.remainder
    }

    /// Coefficient of `k^e`, zero when absent.
    pub fn coeff(&self, e: f64) -> f64 {
        self.terms.iter().find(|t| t.0 == e).map_or(0.0, |t| t.1)
    }

    /// Main terms at `k > 0`.
    pub fn eval(&self, k: f64) -> f64 {
        let mut v = if self.kloglog != 0.0 {
            self.kloglog * k * k.ln()
        } else {
            0.0
        };
        for &(e, c) in &self.terms {
            v += c * k.powf(e);
        }
        v
    }
}

/// Main value together with the class of the neglected part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: f64,
    pub remainder: Remainder,
}

/// `μ = γ (2/b)^β`.
pub fn mu_from_gamma(gamma: f64, beta: f64, b: f64) -> Result<f64> {
    if !(gamma > 0.0 && beta > 0.0 && b > 0.0) {
        return domain(format!("need gamma, beta, b > 0, got {gamma}, {beta}, {b}"));
    }
    Ok(gamma * (2.0 / b).powf(beta))
}

const J_GUARD: f64 = 1e-9;

/// Largest `j` with `j < bound`, the bound being excluded even when it is an integer.
fn last_index(bound: f64) -> usize {
    (bound - J_GUARD).ceil().max(1.0) as usize - 1
}

/// Expansion of `ln ν_k` for Gaussian-type decay `e^{−γ|x|^{2β}}`.
pub fn decay_expansion(beta: f64, mu: f64) -> Result<AsymptoticExpansion> {
    if !(beta > 0.0 && beta.is_finite() && mu > 0.0 && mu.is_finite()) {
        return domain(format!("need beta, mu > 0, got {beta}, {mu}"));
    }
    if beta == 1.0 {
        return Ok(AsymptoticExpansion::new(
            0.0,
            vec![(1.0, -mu.ln_1p())],
            Remainder::OLogK,
        ));
    }
    if beta < 1.0 {
        let jmax = last_index(1.0 / (1.0 - beta));
        let f = f_series(beta, mu, jmax)?;
        let terms = (1..=jmax)
            .map(|j| ((beta - 1.0) * j as f64 + 1.0, -f.coeff(j)))
            .collect();
        return Ok(AsymptoticExpansion::new(0.0, terms, Remainder::OLogK));
    }
    let jmax = last_index(beta / (beta - 1.0));
    let g = g_series(beta, mu, jmax)?;
    let mut terms = vec![(1.0, (beta - 1.0 - (mu * beta).ln()) / beta)];
    terms.extend((1..=jmax).map(|j| ((1.0 / beta - 1.0) * j as f64 + 1.0, -g.coeff(j))));
    Ok(AsymptoticExpansion::new(-(beta - 1.0) / beta, terms, Remainder::OLogK))
}

/// `−k ln k + O(k)`; for a disk with `ϱ = bR²/2` the linear term `k(1 + ln ϱ)` is known up to `o(k)`.
pub fn compact_support_expansion(disk_rho: Option<f64>) -> Result<AsymptoticExpansion> {
    match disk_rho {
        None => Ok(AsymptoticExpansion::new(-1.0, vec![], Remainder::OK)),
        Some(rho) if rho > 0.0 => Ok(AsymptoticExpansion::new(
            -1.0,
            vec![(1.0, 1.0 + rho.ln())],
            Remainder::LittleOK,
        )),
        Some(rho) => domain(format!("disk parameter must be positive, got {rho}")),
    }
}

/// Main terms of `ln ℒ(k)`; the shift `δ` and the disk term only move the `O(log k)` band.
pub fn lnl_prediction(beta: f64, mu: f64, rho: f64, delta: f64, k: f64) -> Result<Prediction> {
    if !(rho > 0.0) || !delta.is_finite() {
        return domain(format!("need rho > 0 and finite delta, got {rho}, {delta}"));
    }
    if !(k > 1.0) {
        return domain(format!("prediction needs k > 1, got {k}"));
    }
    let e = decay_expansion(beta, mu)?;
    Ok(Prediction {
        value: e.eval(k),
        remainder: e.remainder(),
    })
}

/// `ℒ(k) = (c₀ J_{β,μ}(k+δ) + c₁ E_ϱ(k−δ₋)) / Γ(k+1)` by quadrature.
#[allow(clippy::too_many_arguments)]
pub fn ln_l_numeric(beta: f64, mu: f64, rho: f64, delta: f64, c0: f64, c1: f64, k: f64) -> Result<LogScalar> {
    if !(c0 > 0.0) || !c1.is_finite() {
        return domain(format!("need c0 > 0 and finite c1, got {c0}, {c1}"));
    }
    if !(k > (-1.0f64).max(-delta - 1.0)) {
        return domain(format!("k = {k} outside the admissible range for delta = {delta}"));
    }
    let delta_minus = (-delta).max(0.0);
    let j = log_j_integral(beta, mu, k + delta)?.scale(c0);
    let e = if c1 == 0.0 {
        LogScalar::ZERO
    } else {
        log_lower_incomplete(k - delta_minus, rho)?.scale(c1)
    };
    Ok((j + e) * LogScalar::from_ln(-log_gamma(k + 1.0)?))
}

/// `e^{−ϱ} ϱ^{1−m} k^{2m−1} ϱ^k / (m! k!)`.
pub fn disk_prediction(m: usize, rho: f64, k: usize) -> Result<LogScalar> {
    if !(rho > 0.0 && rho.is_finite()) {
        return domain(format!("rho must be positive, got {rho}"));
    }
    if k == 0 {
        return domain("disk prediction needs k >= 1");
    }
    let (kf, mf) = (k as f64, m as f64);
    let lr = rho.ln();
    let ln = -rho + (1.0 - mf) * lr + (2.0 * mf - 1.0) * kf.ln() + kf * lr - log_factorial(m) - log_factorial(k);
    Ok(LogScalar::from_ln(ln))
}
