use crate::error::{domain, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2j} / (2j (2j − 1)) for j = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const SHIFT_TO: f64 = 15.0;

/// `ln Γ(x)` for `x > 0`.
///
/// Arguments below 15 are shifted up with the recurrence `Γ(x+1) = xΓ(x)`; the
/// Stirling series with eight Bernoulli terms is then accurate to machine
/// precision.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("log_gamma needs a finite x > 0, got {x}"));
    }
    let mut y = x;
    let mut prod = 1.0;
    while y < SHIFT_TO {
        prod *= y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    let stirling = (y - 0.5) * y.ln() - y + HALF_LN_2PI + series;
    Ok(stirling - prod.ln())
}

/// `ln k!`.
pub fn log_factorial(k: usize) -> f64 {
    log_gamma(k as f64 + 1.0).expect("k + 1 is positive")
}

/// `ln binom(n, k)` for real `n ≥ k ≥ 0` with `n − k > −1`.
pub fn ln_binomial(n: f64, k: f64) -> Result<f64> {
    Ok(log_gamma(n + 1.0)? - log_gamma(k + 1.0)? - log_gamma(n - k + 1.0)?)
}
