#![allow(dead_code)]

use landau_core::asymptotics::{objective, solve_minimizer, MinimizerKind};
use landau_core::special::{laguerre, LaguerreParams};
use landau_core::symbol::laguerre_of_laplacian;
use landau_core::toeplitz::{basis_polynomial, gauged_element, matrix_element};
use landau_core::{MagneticContext, RadialSymbol};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// Worst `|Σ_{j≤q} L_j^{(m)}(t) − L_q^{(m+1)}(t)|`, scaled by the size of the terms.
pub fn laguerre_sum_identity(samples: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let q = rng.random_range(0..=40usize);
        let m = rng.random_range(0..=12usize);
        let t = rng.random_range(0.0..60.0);
        let terms: Vec<f64> = (0..=q).map(|j| laguerre(LaguerreParams::new(j, m), t)).collect();
        let lhs: f64 = terms.iter().sum();
        let rhs = laguerre(LaguerreParams::new(q, m + 1), t);
        let scale = 1.0 + rhs.abs() + terms.iter().map(|x| x.abs()).sum::<f64>();
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    worst
}

/// Worst relative gap between `Ξ_{m,m}(V;k,k)` and `Ξ_{0,0}(L_m(−Δ/2b)V;k,k)`.
pub fn xi_laplacian_identity(b: f64, v: &RadialSymbol, max_m: usize, max_k: usize) -> f64 {
    let ctx = MagneticContext::new(b).unwrap();
    let mut worst: f64 = 0.0;
    for m in 0..=max_m {
        let w = laguerre_of_laplacian(v, m, 0, b).unwrap();
        for k in 0..=max_k {
            let lhs = matrix_element(&ctx, v, m, m, k, k).unwrap().to_complex().0;
            let rhs = matrix_element(&ctx, &w, 0, 0, k, k).unwrap().to_complex().0;
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1e-300));
        }
    }
    worst
}

type Poly = BTreeMap<(usize, usize), Complex64>;

fn poly(q: usize, k: usize, b: f64) -> Poly {
    let mut p = Poly::new();
    for mono in basis_polynomial(q, k, b) {
        *p.entry((mono.z_pow, mono.zbar_pow)).or_default() += Complex64::new(mono.re, mono.im);
    }
    p
}

/// `∫ z^a z̄^c e^{−b|z|²/2} dA = δ_{ac} π a! (2/b)^{a+1}`.
fn gaussian_moment(a: usize, c: usize, b: f64) -> f64 {
    if a != c {
        return 0.0;
    }
    let fact: f64 = (1..=a).map(|i| i as f64).product();
    std::f64::consts::PI * fact * (2.0 / b).powi(a as i32 + 1)
}

/// Worst `|⟨φ_{m,k}, φ_{s,ℓ}⟩ − δδ|` from the explicit polynomials and exact Gaussian moments.
pub fn orthonormality_from_polynomials(b: f64, max_q: usize, max_k: usize) -> f64 {
    let polys: Vec<((usize, usize), Poly)> = (0..=max_q)
        .flat_map(|q| (0..=max_k).map(move |k| (q, k)))
        .map(|(q, k)| ((q, k), poly(q, k, b)))
        .collect();
    let mut worst: f64 = 0.0;
    for (i1, p1) in &polys {
        for (i2, p2) in &polys {
            let mut s = Complex64::new(0.0, 0.0);
            for (&(a1, c1), x) in p1 {
                for (&(a2, c2), y) in p2 {
                    // x z^{a1} z̄^{c1} · conj(y) z̄^{a2} z^{c2}
                    s += x * y.conj() * gaussian_moment(a1 + c2, c1 + a2, b);
                }
            }
            let want = if i1 == i2 { 1.0 } else { 0.0 };
            worst = worst.max((s - want).norm());
        }
    }
    worst
}

/// Worst `|⟨φ_{m,k}, φ_{s,ℓ}⟩ − δδ|` from matrix elements of `V = 1`.
pub fn orthonormality_from_elements(b: f64, max_q: usize, max_k: usize) -> f64 {
    let ctx = MagneticContext::new(b).unwrap();
    let one = RadialSymbol::constant(1.0);
    let mut worst: f64 = 0.0;
    for m in 0..=max_q {
        for s in 0..=max_q {
            for k in 0..=max_k {
                for l in 0..=max_k {
                    let (re, im) = matrix_element(&ctx, &one, m, s, k, l).unwrap().to_complex();
                    let want = if m == s && k == l { 1.0 } else { 0.0 };
                    worst = worst.max(((re - want).powi(2) + im * im).sqrt());
                }
            }
        }
    }
    worst
}

/// Worst coefficient gap between `a* φ_{q,k}` and `√(2b(q+1)) φ_{q+1,k}`, where
/// `a* (P e^{−b|z|²/4}) = −2i(∂_z P − (b/2) z̄ P) e^{−b|z|²/4}`.
pub fn ladder_raise_gap(b: f64, max_q: usize, max_k: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for q in 0..=max_q {
        for k in 0..=max_k {
            let p = poly(q, k, b);
            let mut out = Poly::new();
            let factor = Complex64::new(0.0, -2.0);
            for (&(a, c), x) in &p {
                if a > 0 {
                    *out.entry((a - 1, c)).or_default() += factor * x * a as f64;
                }
                *out.entry((a, c + 1)).or_default() -= factor * x * (0.5 * b);
            }
            let scale = (2.0 * b * (q + 1) as f64).sqrt();
            let want = poly(q + 1, k, b);
            let keys: std::collections::BTreeSet<_> = out.keys().chain(want.keys()).copied().collect();
            for key in keys {
                let g = out.get(&key).copied().unwrap_or_default();
                let w = want.get(&key).copied().unwrap_or_default() * scale;
                worst = worst.max((g - w).norm() / (1.0 + w.norm()));
            }
        }
    }
    worst
}

/// Worst relative gap between `G_{m,m}` and the lowering-operator route
/// `⟨V a φ_{m,k}, a φ_{m,k}⟩ = 2bm G_{m−1,m−1}` for `V = 1`.
pub fn gauged_norms(b: f64, max_q: usize, max_k: usize) -> f64 {
    let ctx = MagneticContext::new(b).unwrap();
    let one = RadialSymbol::constant(1.0);
    let mut worst: f64 = 0.0;
    for m in 1..=max_q {
        for k in 0..=max_k {
            let g = gauged_element(&ctx, &one, m - 1, m - 1, k, k).unwrap().to_f64();
            worst = worst.max((g - 1.0).abs());
        }
    }
    worst
}

/// `f(ε) = F(s_<(ε); ε)` or `g(ε) = G(s_>(ε); ε)` from the numerical minimizer.
pub fn minimized_value(kind: MinimizerKind, beta: f64, mu: f64, eps: f64) -> f64 {
    let s = solve_minimizer(kind, beta, mu, eps).unwrap();
    objective(kind, beta, mu, eps, s)
}

/// Taylor coefficients `c₀..c_J` of `f` at 0 from values on `[−h, h]`, through
/// Chebyshev interpolation at `n` nodes (a high-order finite-difference stencil).
pub fn taylor_by_sampling(f: impl Fn(f64) -> f64, h: f64, n: usize, order: usize) -> Vec<f64> {
    let nf = n as f64;
    let vals: Vec<f64> = (0..n)
        .map(|i| f(h * (std::f64::consts::PI * (i as f64 + 0.5) / nf).cos()))
        .collect();
    let cheb: Vec<f64> = (0..n)
        .map(|j| {
            let s: f64 = vals
                .iter()
                .enumerate()
                .map(|(i, v)| v * (std::f64::consts::PI * j as f64 * (i as f64 + 0.5) / nf).cos())
                .sum();
            if j == 0 {
                s / nf
            } else {
                2.0 * s / nf
            }
        })
        .collect();
    // power-basis coefficients of T_j, truncated at `order`
    let mut t: Vec<Vec<f64>> = vec![vec![0.0; order + 1]; n.max(2)];
    t[0][0] = 1.0;
    if order >= 1 {
        t[1][1] = 1.0;
    }
    for j in 2..n {
        for p in 0..=order {
            let up = if p >= 1 { 2.0 * t[j - 1][p - 1] } else { 0.0 };
            t[j][p] = up - t[j - 2][p];
        }
    }
    let mut out = vec![0.0; order + 1];
    for (a, tj) in cheb.iter().zip(&t) {
        for (o, c) in out.iter_mut().zip(tj) {
            *o += a * c;
        }
    }
    out.iter().enumerate().map(|(p, c)| c / h.powi(p as i32)).collect()
}

/// Sampling half-width well inside the analyticity region of the minimizer.
pub fn sampling_width(kind: MinimizerKind, beta: f64, mu: f64) -> f64 {
    match kind {
        MinimizerKind::F => 0.25 / (beta * beta * mu),
        MinimizerKind::G => {
            let s0 = (beta * mu).powf(-1.0 / beta);
            0.25 * beta / (s0 * (1.0 + beta))
        }
    }
}
