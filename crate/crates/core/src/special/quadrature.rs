//! Saddle-centred adaptive Gauss–Legendre quadrature in log domain.
//!
//! For an integrand `f ≥ 0`-ish on `(lo, hi) ⊂ [0, ∞)` given in log form, the
//! substitution `t = c·e^u` turns the Laplace-type peak of `t^k e^{−t}` into a
//! bump of width `O(1/√k)` in `u`. Panels of that width are laid out from the
//! maximum of a caller-supplied log-envelope in both directions until their
//! contributions are negligible, and each panel is refined by bisection.

use std::cell::Cell;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::special::LogScalar;

const NODES: usize = 16;
/// Panels whose absolute contribution falls below this fraction of the running
/// absolute sum are treated as converged.
const NEGLIGIBLE: f64 = 1e-17;
/// Local relative error target on each panel.
const PANEL_TOL: f64 = 1e-14;
const MAX_DEPTH: u32 = 30;
const MAX_PANELS: usize = 20_000;
/// Total bisections allowed per integral.
const MAX_SPLITS: u32 = 200_000;
/// Panels that are still unresolved after `MAX_DEPTH` bisections may carry at
/// most this relative error in total.
const ACCEPT_ERR: f64 = 1e-11;

fn gauss_legendre() -> &'static ([f64; NODES], [f64; NODES]) {
    static RULE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        for i in 0..n.div_ceil(2) {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            let wi = 2.0 / ((1.0 - z * z) * dp * dp);
            w[i] = wi;
            w[n - 1 - i] = wi;
        }
        (x, w)
    })
}

/// Integral over `(lo, hi)` of a function given by `log_f(t) = f(t)` in log
/// form.
///
/// `envelope(t)` must approximate `ln|f(t)|` from above up to slowly varying
/// factors and be unimodal after adding `ln t`; it locates the peak and
/// decides when the tails are exhausted. `hint` is a rough peak location.
pub fn integrate_log<F, E>(log_f: F, envelope: E, lo: f64, hi: f64, hint: f64) -> Result<LogScalar>
where
    F: Fn(f64) -> LogScalar,
    E: Fn(f64) -> f64,
{
    if !(lo >= 0.0) || hi.is_nan() || hi < lo {
        return Err(Error::Domain(format!("bad integration range ({lo}, {hi})")));
    }
    if hi == lo {
        return Ok(LogScalar::ZERO);
    }
    let mut c = if hint.is_finite() && hint > 0.0 { hint } else { 1.0 };
    c = c.clamp(lo, hi);
    if c <= 0.0 {
        c = if hi.is_finite() { 0.5 * hi } else { 1.0 };
    }
    let ln_c = c.ln();
    let ulo = if lo > 0.0 { (lo / c).ln() } else { f64::NEG_INFINITY };
    let uhi = if hi.is_finite() { (hi / c).ln() } else { f64::INFINITY };

    let g = |u: f64| -> f64 {
        let t = c * u.exp();
        if t <= 0.0 || !t.is_finite() {
            return f64::NEG_INFINITY;
        }
        let e = envelope(t);
        if e.is_nan() {
            f64::NEG_INFINITY
        } else {
            e + u
        }
    };

    let u_star = maximize(&g, ulo, uhi);
    let g_star = g(u_star);
    if g_star == f64::NEG_INFINITY {
        return Ok(LogScalar::ZERO);
    }
    let sigma = peak_width(&g, u_star, ulo, uhi);
    let reference = g_star + ln_c;

    // Each value carries the rounding noise of the exponent it came from:
    // `exp(x)` with `x` assembled from terms of size `X` is only good to `X·ε`.
    let scaled = |u: f64| -> (f64, f64) {
        let t = c * u.exp();
        if t <= 0.0 || !t.is_finite() {
            return (0.0, 0.0);
        }
        let v = log_f(t);
        if v.is_zero() {
            return (0.0, 0.0);
        }
        let la = v.ln_abs();
        let e = la + ln_c + u - reference;
        let val = e.exp();
        let noise = val * f64::EPSILON * 4.0 * (1.0 + la.abs() + ln_c.abs() + u.abs() + reference.abs());
        (f64::from(v.sign()) * val, noise)
    };

    let mut acc = Accumulator::default();
    march(&scaled, &g, g_star, u_star, uhi, 1.0, sigma, &mut acc)?;
    march(&scaled, &g, g_star, u_star, ulo, -1.0, sigma, &mut acc)?;

    if acc.unresolved > ACCEPT_ERR * acc.abs {
        return Err(Error::Quadrature {
            reason: "panel refinement hit the depth limit".into(),
            error_bound: acc.unresolved / acc.abs,
        });
    }
    let v = LogScalar::from_f64(acc.sum);
    Ok(v * LogScalar::from_ln(reference))
}

#[derive(Default)]
struct Accumulator {
    sum: f64,
    abs: f64,
    unresolved: f64,
    splits: Cell<u32>,
}

fn maximize(g: &dyn Fn(f64) -> f64, ulo: f64, uhi: f64) -> f64 {
    let clamp = |u: f64| u.clamp(ulo, uhi);
    let u0 = clamp(0.0);
    let g0 = g(u0);
    let delta = 1e-6;
    let (up, dn) = (clamp(u0 + delta), clamp(u0 - delta));
    let dir = if g(up) > g0 {
        1.0
    } else if g(dn) > g0 {
        -1.0
    } else {
        return u0;
    };
    // expand until the function decreases again
    let mut prev = u0;
    let mut a = u0;
    let mut ga = g0;
    let mut step = delta;
    let b = loop {
        let b = clamp(a + dir * step);
        let gb = g(b);
        if gb <= ga {
            break b;
        }
        if b == a {
            return a;
        }
        prev = a;
        a = b;
        ga = gb;
        step *= 2.0;
        if step > 1e4 {
            return a;
        }
    };
    let (mut lo, mut hi) = if prev < b { (prev, b) } else { (b, prev) };
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..300 {
        if hi - lo <= 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        }
    }
    0.5 * (lo + hi)
}

fn peak_width(g: &dyn Fn(f64) -> f64, u: f64, ulo: f64, uhi: f64) -> f64 {
    let mut d: f64 = 1e-2;
    let mut sigma = 1.0;
    for _ in 0..8 {
        let (a, b) = ((u - d).max(ulo), (u + d).min(uhi));
        let (ga, gu, gb) = (g(a), g(u), g(b));
        let mut s: f64 = 1.0;
        if a < u && b > u && ga.is_finite() && gb.is_finite() {
            let h = 0.5 * (b - a);
            let curv = (ga - 2.0 * gu + gb) / (h * h);
            if curv < 0.0 {
                s = s.min(1.0 / (-curv).sqrt());
            }
        }
        let slope = if b > a && ga.is_finite() && gb.is_finite() {
            (gb - ga) / (b - a)
        } else {
            0.0
        };
        if slope.abs() > 1.0 {
            s = s.min(1.0 / slope.abs());
        }
        sigma = s.max(1e-9);
        if sigma >= 5.0 * d {
            break;
        }
        d = sigma / 5.0;
    }
    sigma
}

#[allow(clippy::too_many_arguments)]
fn march(
    f: &dyn Fn(f64) -> (f64, f64),
    g: &dyn Fn(f64) -> f64,
    g_star: f64,
    start: f64,
    end: f64,
    dir: f64,
    sigma: f64,
    acc: &mut Accumulator,
) -> Result<()> {
    let mut a = start;
    let mut h = sigma;
    let mut ga = g(a);
    for n in 0..MAX_PANELS {
        if a == end {
            return Ok(());
        }
        let mut b = a + dir * h;
        if (dir > 0.0 && b > end) || (dir < 0.0 && b < end) {
            b = end;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (val, abs, err) = panel(f, lo, hi, NEGLIGIBLE * acc.abs, 0, &acc.splits);
        acc.sum += val;
        acc.abs += abs;
        acc.unresolved += err;
        if b == end {
            return Ok(());
        }
        let gb = g(b);
        let below = gb - g_star;
        if below < -745.0 && gb <= ga {
            return Ok(());
        }
        if abs <= NEGLIGIBLE * acc.abs && gb < ga && below < -40.0 {
            return Ok(());
        }
        a = b;
        ga = gb;
        if n >= 3 {
            h *= 1.5;
        }
    }
    Err(Error::Quadrature {
        reason: "tail did not become negligible".into(),
        error_bound: f64::INFINITY,
    })
}

/// Gauss–Legendre sum over `[a, b]`: `(value, Σ|terms|, rounding noise)`.
fn rule(f: &dyn Fn(f64) -> (f64, f64), a: f64, b: f64) -> (f64, f64, f64) {
    let (x, w) = gauss_legendre();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    let mut s_abs = 0.0;
    let mut s_noise = 0.0;
    for i in 0..NODES {
        let (v, n) = f(mid + half * x[i]);
        s += v * w[i];
        s_abs += (v * w[i]).abs();
        s_noise += n * w[i];
    }
    (s * half, s_abs * half, s_noise * half)
}

fn panel(f: &dyn Fn(f64) -> (f64, f64), a: f64, b: f64, floor: f64, depth: u32, splits: &Cell<u32>) -> (f64, f64, f64) {
    let (whole, _, _) = rule(f, a, b);
    let m = 0.5 * (a + b);
    let (l, l_abs, l_noise) = rule(f, a, m);
    let (r, r_abs, r_noise) = rule(f, m, b);
    let split = l + r;
    let abs = l_abs + r_abs;
    let diff = (whole - split).abs();
    if diff <= PANEL_TOL * abs + 4.0 * (l_noise + r_noise) || diff <= floor {
        return (split, abs, 0.0);
    }
    if depth >= MAX_DEPTH || m <= a || m >= b || splits.get() >= MAX_SPLITS {
        return (split, abs, diff);
    }
    splits.set(splits.get() + 1);
    let (v1, a1, e1) = panel(f, a, m, 0.5 * floor, depth + 1, splits);
    let (v2, a2, e2) = panel(f, m, b, 0.5 * floor, depth + 1, splits);
    (v1 + v2, a1 + a2, e1 + e2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials() {
        let (x, w) = gauss_legendre();
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        for p in 0..(2 * NODES) {
            let s: f64 = x.iter().zip(w).map(|(xi, wi)| wi * xi.powi(p as i32)).sum();
            let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
            assert!((s - exact).abs() < 1e-14, "degree {p}");
        }
    }

    #[test]
    fn exponential_moments() {
        // ∫₀^∞ t^k e^{−t} dt = k!
        for k in [0usize, 1, 5, 30, 170, 1000, 10_000] {
            let kf = k as f64;
            let v = integrate_log(
                |t| LogScalar::from_ln(kf * t.ln() - t),
                |t| kf * t.ln() - t,
                0.0,
                f64::INFINITY,
                kf + 1.0,
            )
            .unwrap();
            let exact = crate::special::log_factorial(k);
            assert!((v.ln_abs() - exact).abs() < 1e-10, "k={k}: {} vs {exact}", v.ln_abs());
        }
    }

    #[test]
    fn signed_integrand() {
        // ∫₀^∞ (1 − t) e^{−t} dt = 0, ∫₀^∞ (2 − t) e^{−t} dt = 1
        let v = integrate_log(
            |t| LogScalar::from_f64(2.0 - t) * LogScalar::from_ln(-t),
            |t| -t + (1.0 + t).ln(),
            0.0,
            f64::INFINITY,
            1.0,
        )
        .unwrap();
        assert!((v.to_f64() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn finite_range_with_peak_outside() {
        // ∫₀¹ t^50 e^{−t} dt, whose integrand peaks at the right end.
        let v = integrate_log(
            |t| LogScalar::from_ln(50.0 * t.ln() - t),
            |t| 50.0 * t.ln() - t,
            0.0,
            1.0,
            51.0,
        )
        .unwrap();
        // e^{-1} Σ_{j≥51} 1/(j(j−1)…51)-type series: direct series ∑_{n≥0} e^{-1}/(51·52⋯(51+n))
        let mut term = 1.0 / 51.0;
        let mut sum = 0.0;
        for n in 0..60 {
            sum += term;
            term /= 52.0 + n as f64;
        }
        let exact = (-1f64).exp() * sum;
        assert!((v.to_f64() / exact - 1.0).abs() < 1e-12);
    }
}
