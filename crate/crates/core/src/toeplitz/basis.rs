//! Explicit form of the angular-momentum basis.
//!
//! With `n = k − q` and `s = b|z|²/2`,
//! `φ_{q,k} = (−i)^q σ_{q,k} A (b/2)^{|n|/2} w^n L_{min(q,k)}^{(|n|)}(s) e^{−s/2}`
//! where `w^n = z^n` for `n ≥ 0` and `z̄^{|n|}` otherwise,
//! `A = √(b/2π · min(q,k)!/max(q,k)!)` and `σ_{q,k} = (−1)^{q−k}` when `k < q`.

use crate::special::{laguerre_coefficients, laguerre_real, log_factorial};

/// `(−1)^{q−k}` for `k < q`, else `1`.
pub(crate) fn basis_sign(q: usize, k: usize) -> f64 {
    if k < q && (q - k) % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn log_amplitude(q: usize, k: usize, b: f64) -> f64 {
    let (lo, hi) = (q.min(k), q.max(k));
    let n = hi - lo;
    0.5 * ((b / (2.0 * std::f64::consts::PI)).ln() + log_factorial(lo) - log_factorial(hi))
        + 0.5 * n as f64 * (0.5 * b).ln()
}

/// `(−i)^q` as `(re, im)`.
fn phase(q: usize) -> (f64, f64) {
    match q % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, -1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, 1.0),
    }
}

/// `φ_{q,k}(x, y)` as `(re, im)`.
pub fn basis_value(q: usize, k: usize, b: f64, x: f64, y: f64) -> (f64, f64) {
    let (lo, hi) = (q.min(k), q.max(k));
    let n = hi - lo;
    let t = x * x + y * y;
    let s = 0.5 * b * t;
    let radial = basis_sign(q, k) * log_amplitude(q, k, b).exp() * laguerre_real(lo, n as f64, s) * (-0.5 * s).exp();
    // w^n = r^n e^{±inθ}
    let theta = y.atan2(x) * if k >= q { 1.0 } else { -1.0 };
    let rn = t.sqrt().powi(n as i32);
    let (wr, wi) = (rn * (n as f64 * theta).cos(), rn * (n as f64 * theta).sin());
    let (pr, pi) = phase(q);
    let (cr, ci) = (pr * wr - pi * wi, pr * wi + pi * wr);
    (cr * radial, ci * radial)
}

/// Coefficient of `z^{z_pow} z̄^{zbar_pow} e^{−b|z|²/4}` in `φ_{q,k}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisMonomial {
    pub z_pow: usize,
    pub zbar_pow: usize,
    pub re: f64,
    pub im: f64,
}

/// `φ_{q,k} = P(z, z̄) e^{−b|z|²/4}` with `P` expanded into monomials.
pub fn basis_polynomial(q: usize, k: usize, b: f64) -> Vec<BasisMonomial> {
    let (lo, hi) = (q.min(k), q.max(k));
    let n = hi - lo;
    let amp = basis_sign(q, k) * log_amplitude(q, k, b).exp();
    let (pr, pi) = phase(q);
    laguerre_coefficients(lo, n as f64)
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            // s^j = (b/2)^j z^j z̄^j
            let v = amp * c * (0.5 * b).powi(j as i32);
            let (z_pow, zbar_pow) = if k >= q { (j + n, j) } else { (j, j + n) };
            BasisMonomial {
                z_pow,
                zbar_pow,
                re: v * pr,
                im: v * pi,
            }
        })
        .collect()
}
