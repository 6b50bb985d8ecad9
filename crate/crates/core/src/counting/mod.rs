//! Counting functions `#{k : ν_k > λ}`, superlevel-set areas and leading-order counting laws.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::LogScalar;
use crate::symbol::Radial;
use crate::toeplitz::{EigenvalueSequence, SequenceMeta};

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return domain(format!("lambda must be positive, got {lambda}"));
    }
    Ok(())
}

/// True when `λ` lies below the truncation floor of `seq`, so counts are only lower bounds.
pub fn below_floor(seq: &EigenvalueSequence, lambda: f64) -> bool {
    seq.floor().is_some_and(|f| f.abs() >= LogScalar::from_f64(lambda))
}

/// `#{k : ν_k > λ}` for a non-increasing sequence.
pub fn count_above(seq: &EigenvalueSequence, lambda: f64) -> Result<usize> {
    check_lambda(lambda)?;
    count_above_log(seq, LogScalar::from_f64(lambda))
}

/// [`count_above`] with `λ` given in log domain, so ties are decided exactly.
pub fn count_above_log(seq: &EigenvalueSequence, lambda: LogScalar) -> Result<usize> {
    if lambda.sign() <= 0 || !lambda.ln_abs().is_finite() {
        return domain(format!("lambda must be positive, got {lambda}"));
    }
    if seq.floor().is_some_and(|f| f.abs() >= lambda) {
        log::warn!("lambda = {lambda} is below the truncation floor; count is a lower bound");
    }
    Ok(seq.values().partition_point(|v| *v > lambda))
}

/// `#{k : ν_k > λ}` for a lazily evaluated non-increasing `k ↦ ν_k`, probing at most `k_max + 1` indices.
///
/// Errors when `ν_{k_max} > λ`, since the count is then not determined.
pub fn count_above_monotone<F>(nu: F, lambda: f64, k_max: usize) -> Result<usize>
where
    F: Fn(usize) -> Result<LogScalar>,
{
    check_lambda(lambda)?;
    let l = LogScalar::from_f64(lambda);
    let above = |k: usize| -> Result<bool> { Ok(nu(k)? > l) };
    if !above(0)? {
        return Ok(0);
    }
    let mut lo = 0usize;
    let mut hi = 1usize;
    loop {
        if hi >= k_max {
            if above(k_max)? {
                return Err(Error::NonConvergence(format!(
                    "nu_{k_max} still above lambda = {lambda:e}"
                )));
            }
            hi = k_max;
            break;
        }
        if !above(hi)? {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    // invariant: above(lo) and !above(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if above(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

const SCAN_POINTS: usize = 2048;

/// `|{x ∈ ℝ² : ψ(x) > λ}|` for a radial `ψ` that eventually decays below `λ`.
pub fn phi_volume(psi: &dyn Radial, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let ll = lambda.ln();
    let above = |t: f64| {
        let v = psi.log_value(t);
        v.sign() > 0 && v.ln_abs() > ll
    };
    let mut total = 0.0;
    for (a, b) in psi.pieces() {
        let b = if b.is_finite() {
            b
        } else {
            // find a point past which ψ stays below λ over two doublings
            let mut t = a.max(1.0);
            let mut quiet = 0;
            while quiet < 3 {
                if t > 1e300 {
                    return Err(Error::Hypothesis(format!(
                        "symbol does not decay below lambda = {lambda:e}"
                    )));
                }
                quiet = if above(t) { 0 } else { quiet + 1 };
                t *= 2.0;
            }
            t
        };
        if b <= a {
            continue;
        }
        total += superlevel_length(&above, a, b);
    }
    Ok(PI * total)
}

/// Length of `{t ∈ (a, b) : above(t)}` from a log-spaced scan with bisected crossings.
fn superlevel_length(above: &dyn Fn(f64) -> bool, a: f64, b: f64) -> f64 {
    let lo = if a > 0.0 { a } else { (b * 1e-12).min(1e-12) };
    let ratio = (b / lo).powf(1.0 / SCAN_POINTS as f64);
    let interior = |i: usize| lo * ratio.powi(i as i32);
    let crossing = |mut x: f64, mut y: f64| {
        let sx = above(x);
        for _ in 0..80 {
            let m = 0.5 * (x + y);
            if above(m) == sx {
                x = m;
            } else {
                y = m;
            }
        }
        0.5 * (x + y)
    };
    let mut len = 0.0;
    let mut start = if above(lo) { Some(a) } else { None };
    let mut prev = lo;
    for i in 1..=SCAN_POINTS {
        let t = if i == SCAN_POINTS { b } else { interior(i) };
        let s = if i == SCAN_POINTS {
            above(b * (1.0 - 1e-15))
        } else {
            above(t)
        };
        match (start, s) {
            (None, true) => start = Some(crossing(prev, t)),
            (Some(x0), false) => {
                len += crossing(prev, t) - x0;
                start = None;
            }
            _ => {}
        }
        prev = t;
    }
    if let Some(x0) = start {
        len += b - x0;
    }
    len
}

/// `(b/2) τ^{2/ρ}` for a constant angular profile `τ`.
pub fn cq_constant(tau: f64, rho: f64, b: f64) -> Result<f64> {
    if !(tau > 0.0 && rho > 0.0 && b > 0.0) {
        return domain(format!("need tau, rho, b > 0, got {tau}, {rho}, {b}"));
    }
    Ok(0.5 * b * tau.powf(2.0 / rho))
}

/// `(b/4π) ∫₀^{2π} τ(θ)^{2/ρ} dθ` by the periodic trapezoid rule.
pub fn cq_constant_angular<F: Fn(f64) -> f64>(tau: F, rho: f64, b: f64, nodes: usize) -> Result<f64> {
    if !(rho > 0.0 && b > 0.0) || nodes == 0 {
        return domain("need rho, b > 0 and at least one node");
    }
    let h = 2.0 * PI / nodes as f64;
    let mut s = 0.0;
    for i in 0..nodes {
        let v = tau(i as f64 * h);
        if !(v >= 0.0) {
            return domain(format!("angular profile negative at theta = {}", i as f64 * h));
        }
        s += v.powf(2.0 / rho);
    }
    Ok(b / (4.0 * PI) * s * h)
}

/// Leading-order counting law for the cluster at a Landau level.
#[derive(Clone, Copy)]
pub enum CountingLaw<'a> {
    /// Compact support: `|ln λ| / ln|ln λ|`.
    CompactSupport,
    /// Decay `e^{−γ|x|^{2β}}` with `μ = γ(2/b)^β`.
    Exponential { beta: f64, mu: f64 },
    /// Power-like decay: `(b/2π) Φ_ψ(λ)` for the symbol `ψ`.
    PowerLike { b: f64, symbol: &'a dyn Radial },
}

/// Predicted `𝒩(λ)` under `law`.
pub fn predicted_count(law: CountingLaw<'_>, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let l = lambda.ln().abs();
    match law {
        CountingLaw::CompactSupport | CountingLaw::Exponential { .. } if lambda >= (-1.0f64).exp() => {
            domain(format!("logarithmic laws need lambda < 1/e, got {lambda}"))
        }
        CountingLaw::CompactSupport => Ok(l / l.ln()),
        CountingLaw::Exponential { beta, mu } => {
            if !(beta > 0.0 && mu > 0.0) {
                return domain(format!("need beta, mu > 0, got {beta}, {mu}"));
            }
            Ok(if beta < 1.0 {
                mu.powf(-1.0 / beta) * l.powf(1.0 / beta)
            } else if beta == 1.0 {
                l / mu.ln_1p()
            } else {
                beta / (beta - 1.0) * l / l.ln()
            })
        }
        CountingLaw::PowerLike { b, symbol } => {
            if !(b > 0.0) {
                return domain(format!("b must be positive, got {b}"));
            }
            Ok(b / (2.0 * PI) * phi_volume(symbol, lambda)?)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub lambda: f64,
    pub count: usize,
    pub predicted: f64,
    pub ratio: f64,
}

/// Counts against predictions over a grid of `λ`, ascending in `λ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingCurve {
    pub points: Vec<CurvePoint>,
    pub source: SequenceMeta,
}

impl CountingCurve {
    pub fn new(seq: &EigenvalueSequence, lambdas: &[f64], law: CountingLaw<'_>) -> Result<Self> {
        let mut ls = lambdas.to_vec();
        ls.sort_by(f64::total_cmp);
        let points = ls
            .into_iter()
            .map(|lambda| {
                let count = count_above(seq, lambda)?;
                let predicted = predicted_count(law, lambda)?;
                Ok(CurvePoint {
                    lambda,
                    count,
                    predicted,
                    ratio: count as f64 / predicted,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            points,
            source: seq.meta.clone(),
        })
    }

    /// `count` is non-increasing along the grid.
    pub fn is_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[0].count >= w[1].count)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(p)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `λ` grid `lambda_min·(lambda_max/lambda_min)^{i/(steps−1)}`.
pub fn log_grid(lambda_min: f64, lambda_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lambda_min > 0.0 && lambda_max >= lambda_min) || steps == 0 {
        return domain(format!("bad lambda grid [{lambda_min}, {lambda_max}] x {steps}"));
    }
    if steps == 1 {
        return Ok(vec![lambda_min]);
    }
    let r = (lambda_max / lambda_min).ln() / (steps - 1) as f64;
    Ok((0..steps).map(|i| lambda_min * (r * i as f64).exp()).collect())
}
