use landau_core::asymptotics::PowerSeries;
use landau_core::counting::count_above_log;
use landau_core::toeplitz::toeplitz_eigs_radial;
use landau_core::{LogScalar, MagneticContext, RadialSymbol};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::CliError;

type Check = fn(&mut StdRng) -> Result<String, String>;

/// Randomized self-checks; prints one line each and returns the failure count.
pub fn run_checks(seed: u64, rounds: usize) -> Result<usize, CliError> {
    let checks: [(&str, Check); 4] = [
        ("gaussian closed form", gaussian),
        ("count duality", duality),
        ("series exp/ln", series_round_trip),
        ("log scalar arithmetic", log_arith),
    ];
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failed = 0;
    for (name, f) in checks {
        let mut last = String::new();
        let mut err = None;
        for _ in 0..rounds {
            match f(&mut rng) {
                Ok(msg) => last = msg,
                Err(msg) => {
                    err = Some(msg);
                    break;
                }
            }
        }
        match err {
            None => println!("PASS {name}: {last}"),
            Some(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    println!("check: seed {seed}, {failed} failed");
    Ok(failed)
}

fn gaussian_params(rng: &mut StdRng) -> (f64, f64) {
    (rng.random_range(0.5..2.0), rng.random_range(0.25..2.0))
}

fn gaussian(rng: &mut StdRng) -> Result<String, String> {
    let (b, gamma) = gaussian_params(rng);
    let ctx = MagneticContext::new(b).map_err(|e| e.to_string())?;
    let seq = toeplitz_eigs_radial(&ctx, &RadialSymbol::decaying(1.0, gamma, 1.0), 0, 60).map_err(|e| e.to_string())?;
    let l = (2.0 * gamma / b).ln_1p();
    let mut worst: f64 = 0.0;
    for (k, v) in seq.values().iter().enumerate() {
        let want = -(k as f64 + 1.0) * l;
        worst = worst.max((v.ln_abs() - want).abs() / want.abs());
    }
    if worst < 1e-10 {
        Ok(format!("b={b:.3} gamma={gamma:.3}: {worst:.1e}"))
    } else {
        Err(format!("b={b:.3} gamma={gamma:.3}: relative error {worst:.1e}"))
    }
}

fn duality(rng: &mut StdRng) -> Result<String, String> {
    let (b, gamma) = gaussian_params(rng);
    let ctx = MagneticContext::new(b).map_err(|e| e.to_string())?;
    let seq = toeplitz_eigs_radial(&ctx, &RadialSymbol::decaying(1.0, gamma, 1.0), 0, 40).map_err(|e| e.to_string())?;
    let k = rng.random_range(0..seq.len());
    let n = count_above_log(&seq, seq.values()[k]).map_err(|e| e.to_string())?;
    if n == k {
        Ok(format!("N(nu_{k}) = {n}"))
    } else {
        Err(format!("N(nu_{k}) = {n}"))
    }
}

fn series_round_trip(rng: &mut StdRng) -> Result<String, String> {
    let mut c: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
    c[0] = rng.random_range(0.5..2.0);
    let s = PowerSeries::new(c.clone());
    let back = s.ln().map_err(|e| e.to_string())?.exp();
    let err = c
        .iter()
        .enumerate()
        .map(|(i, x)| (back.coeff(i) - x).abs())
        .fold(0.0, f64::max);
    if err < 1e-10 {
        Ok(format!("{err:.1e}"))
    } else {
        Err(format!("coefficient error {err:.1e}"))
    }
}

fn log_arith(rng: &mut StdRng) -> Result<String, String> {
    let x: f64 = rng.random_range(-1e3..1e3);
    let y: f64 = rng.random_range(-1e3..1e3);
    let (a, b) = (LogScalar::from_f64(x), LogScalar::from_f64(y));
    let sum = (a + b).to_f64();
    let prod = (a * b).to_f64();
    let tol = 1e-12 * (x.abs() + y.abs());
    if (sum - (x + y)).abs() <= tol && (prod - x * y).abs() <= 1e-12 * (x * y).abs() {
        Ok(format!("x={x:.3} y={y:.3}"))
    } else {
        Err(format!("x={x} y={y}: sum {sum}, product {prod}"))
    }
}
