mod common;

use landau_core::special::{log_gamma, log_j_integral, log_lower_incomplete, log_upper_incomplete};
use landau_core::RadialSymbol;

#[test]
fn raising_operator_matches_basis() {
    for b in [0.5, 1.0, 2.5] {
        assert!(common::ladder_raise_gap(b, 3, 10) < 1e-10);
    }
}

#[test]
fn orthonormality_two_routes() {
    for b in [0.7, 2.0] {
        assert!(common::orthonormality_from_polynomials(b, 3, 8) < 1e-10);
        assert!(common::orthonormality_from_elements(b, 3, 8) < 1e-10);
    }
    assert!(common::gauged_norms(1.3, 3, 10) < 1e-12);
}

#[test]
fn laguerre_sum_identity() {
    assert!(common::laguerre_sum_identity(1000, 11) < 1e-12);
}

#[test]
fn level_matrix_elements_through_laplacian() {
    let v = RadialSymbol::decaying(1.0, 0.4, 1.0);
    assert!(common::xi_laplacian_identity(1.5, &v, 3, 20) < 1e-10);
    let w = RadialSymbol::term(2.0, 1.0, 0.8, 1.0);
    assert!(common::xi_laplacian_identity(0.9, &w, 3, 12) < 1e-10);
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn lower_incomplete_against_trapezoid() {
    let n = 1_000_000;
    let h = 5.0 / n as f64;
    let f = |t: f64| (50.0 * t.ln() - t).exp();
    let mut s = 0.5 * f(5.0);
    for i in 1..n {
        s += f(i as f64 * h);
    }
    let trap = s * h;
    let v = log_lower_incomplete(50.0, 5.0).unwrap().to_f64();
    assert!((v / trap - 1.0).abs() < 1e-8, "{v} {trap}");
    // the complement closes to Γ(51)
    let up = log_upper_incomplete(50.0, 5.0).unwrap();
    let total = (log_lower_incomplete(50.0, 5.0).unwrap() + up).ln_abs();
    assert!((total - log_gamma(51.0).unwrap()).abs() < 1e-12 * total);
}

#[test]
fn j_integral_against_brute_force() {
    let brute = simpson(|t| (-t * t - t).exp(), 0.0, 40.0, 1_000_000);
    let v = log_j_integral(2.0, 1.0, 0.0).unwrap().to_f64();
    assert!((v / brute - 1.0).abs() < 1e-12, "{v} {brute}");
    for k in [0.0, 3.5, 80.0] {
        let j = log_j_integral(1.0, 0.6, k).unwrap().ln_abs();
        let exact = log_gamma(k + 1.0).unwrap() - (k + 1.0) * 1.6f64.ln();
        assert!((j - exact).abs() < 1e-12 * exact.abs().max(1.0));
    }
}
