use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::special::quadrature::integrate_log;
use crate::special::{laguerre_real, log_factorial, LogScalar};
use crate::symbol::Radial;
use crate::toeplitz::basis::basis_sign;
use crate::toeplitz::MagneticContext;

/// `Ξ = i^{i_power} · value` with a real `value`.
///
/// For real radial `V`, `Ξ_{m,s}(V;k,ℓ) = (−i)^{m−s} G` with `G` real, so the
/// phase is carried separately from the log-domain magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixElement {
    pub value: LogScalar,
    pub i_power: u8,
}

impl MatrixElement {
    /// `(re, im)` as plain reals.
    pub fn to_complex(&self) -> (f64, f64) {
        let v = self.value.to_f64();
        match self.i_power % 4 {
            0 => (v, 0.0),
            1 => (0.0, v),
            2 => (-v, 0.0),
            _ => (0.0, -v),
        }
    }

    /// The element as a signed real when it is real (`i_power` even).
    pub fn real(&self) -> Option<LogScalar> {
        match self.i_power % 4 {
            0 => Some(self.value),
            2 => Some(-self.value),
            _ if self.value.is_zero() => Some(LogScalar::ZERO),
            _ => None,
        }
    }
}

/// `Ξ_{m,s}(V;k,ℓ) = ⟨V φ_{m,k}, φ_{s,ℓ}⟩` for real radial `V`.
pub fn matrix_element(
    ctx: &MagneticContext,
    v: &dyn Radial,
    m: usize,
    s: usize,
    k: usize,
    l: usize,
) -> Result<MatrixElement> {
    let g = gauged_element(ctx, v, m, s, k, l)?;
    let d = (3 * (m as i64 - s as i64)).rem_euclid(4) as u8;
    Ok(MatrixElement { value: g, i_power: d })
}

/// The real factor `G` in `Ξ_{m,s}(V;k,ℓ) = (−i)^{m−s} G`:
///
/// `G = σ_{m,k} σ_{s,ℓ} √(a!/(a+n)! · c!/(c+n)!) ∫₀^∞ v(2u/b) u^n L_a^{(n)}(u) L_c^{(n)}(u) e^{−u} du`
/// with `n = |k − m|`, `a = min(m,k)`, `c = min(s,ℓ)`. Zero unless `k − m = ℓ − s`.
pub fn gauged_element(
    ctx: &MagneticContext,
    v: &dyn Radial,
    m: usize,
    s: usize,
    k: usize,
    l: usize,
) -> Result<LogScalar> {
    if k as i64 - m as i64 != l as i64 - s as i64 {
        return Ok(LogScalar::ZERO);
    }
    let n = (k as i64 - m as i64).unsigned_abs() as usize;
    let a = m.min(k);
    let c = s.min(l);
    let nf = n as f64;
    let half_b = 0.5 * ctx.b;
    let ln_pref = 0.5 * (log_factorial(a) - log_factorial(a + n) + log_factorial(c) - log_factorial(c + n));
    let sign = basis_sign(m, k) * basis_sign(s, l);
    let poly_deg = (a + c) as f64;

    let log_f = |u: f64| -> LogScalar {
        let vv = v.log_value(u / half_b);
        if vv.is_zero() {
            return vv;
        }
        let p = laguerre_real(a, nf, u) * laguerre_real(c, nf, u);
        let w = if n == 0 { -u } else { nf * u.ln() - u };
        vv * LogScalar::from_f64(p) * LogScalar::from_ln(w)
    };
    let envelope = |u: f64| -> f64 {
        let w = if n == 0 { -u } else { nf * u.ln() - u };
        v.log_envelope(u / half_b) + w + poly_deg * (1.0 + u).ln()
    };
    let hint = nf + poly_deg + 1.0;

    let mut total = LogScalar::ZERO;
    for (lo, hi) in v.pieces() {
        total = total + integrate_log(log_f, envelope, lo * half_b, hi * half_b, hint)?;
    }
    Ok(total * LogScalar::new(sign as i8, ln_pref))
}

/// `⟨z^w H φ_{0,k}, φ_{0,k+w}⟩ = (2/b)^{w/2} / √(k!(k+w)!) ∫₀^∞ H(2u/b) u^{k+w} e^{−u} du`
/// for real radial `H` and `w ≥ 0`.
pub fn angular_element(ctx: &MagneticContext, h: &dyn Radial, weight: usize, k: usize) -> Result<LogScalar> {
    let half_b = 0.5 * ctx.b;
    let p = (k + weight) as f64;
    let log_f = |u: f64| -> LogScalar {
        let hv = h.log_value(u / half_b);
        if hv.is_zero() {
            return hv;
        }
        hv * LogScalar::from_ln(if p == 0.0 { -u } else { p * u.ln() - u })
    };
    let envelope = |u: f64| h.log_envelope(u / half_b) + if p == 0.0 { -u } else { p * u.ln() - u };
    let mut total = LogScalar::ZERO;
    for (lo, hi) in h.pieces() {
        total = total + integrate_log(log_f, envelope, lo * half_b, hi * half_b, p + 1.0)?;
    }
    let ln_pref = -0.5 * weight as f64 * half_b.ln() - 0.5 * (log_factorial(k) + log_factorial(k + weight));
    Ok(total * LogScalar::from_ln(ln_pref))
}
