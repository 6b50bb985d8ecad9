//! `landau`: batch front end for the Landau-level Toeplitz experiments.
//!
//! Every subcommand resolves a single [`ExperimentConfig`] (config file first,
//! flags on top), validates it, and writes CSV/JSON files stamped with the
//! crate version and the SHA-256 of the resolved config.

// `!(x > 0.0)` is the NaN-rejecting form used for argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod check;
mod config;
mod error;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use landau_core::galerkin::Sign;

use crate::config::{Decay, Disk, ExperimentConfig, Mode, PowerTail};
use crate::error::CliError;
use crate::run::Task;

#[derive(Parser)]
#[command(
    name = "landau",
    version,
    about = "Toeplitz eigenvalue experiments near Landau levels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the Toeplitz operator for the configured symbol.
    Eigs,
    /// Compact support: numerics against `−k ln k + k(1 + ln ϱ)`.
    Thm1,
    /// Decay `e^{−γ|x|^{2β}}`: numerics against the expansion of `ln ν_k`.
    Thm2,
    /// Power tail `τ r^{−ρ}`: counting function against the semiclassical constant.
    Thm3,
    /// Disk symbol: eigenvalues against the closed-form asymptotics.
    LemmaDisk,
    /// Truncated `H₀ ± W`: cluster shifts against the Toeplitz bounds.
    Sandwich,
    /// Runs the mode named in the config or by `--mode`.
    Run,
    /// Seeded randomized self-checks.
    Check {
        #[arg(long, default_value_t = 8)]
        rounds: usize,
    },
}

#[derive(Args)]
struct Flags {
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    q: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Disk parameter `ϱ = bR²/2`, or the tail exponent for `thm3`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    rho: Option<f64>,
    /// Tail coefficient for `thm3`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    tau: Option<f64>,
    /// Section size.
    #[arg(long = "K", global = true)]
    k_max: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    lambda_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    lambda_max: Option<f64>,
    #[arg(long, global = true)]
    lambda_steps: Option<usize>,
    /// Sign of the metric perturbation for `sandwich`.
    #[arg(long, global = true, value_parser = parse_sign)]
    sign: Option<Sign>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s}")),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RhoTarget {
    Disk,
    Tail,
}

impl Flags {
    /// Config file (or defaults) with the flags applied on top.
    fn resolve(&self, rho_target: RhoTarget) -> Result<ExperimentConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(m) = self.mode {
            c.mode = m;
        }
        if let Some(b) = self.b {
            c.b = b;
        }
        if let Some(q) = self.q {
            c.q = q;
        }
        if self.beta.is_some() || self.gamma.is_some() {
            let d = c.decay.unwrap_or(Decay { beta: 1.0, gamma: 1.0 });
            c.decay = Some(Decay {
                beta: self.beta.unwrap_or(d.beta),
                gamma: self.gamma.unwrap_or(d.gamma),
            });
        }
        match rho_target {
            RhoTarget::Disk => {
                if let Some(rho) = self.rho {
                    c.disk = Some(Disk { rho });
                }
            }
            RhoTarget::Tail => {
                if self.rho.is_some() || self.tau.is_some() {
                    let t = c.tail.unwrap_or(PowerTail { tau: 1.0, rho: 1.0 });
                    c.tail = Some(PowerTail {
                        tau: self.tau.unwrap_or(t.tau),
                        rho: self.rho.unwrap_or(t.rho),
                    });
                }
            }
        }
        if let Some(k) = self.k_max {
            c.k_max = k;
        }
        if let Some(x) = self.lambda_min {
            c.lambda.min = x;
        }
        if let Some(x) = self.lambda_max {
            c.lambda.max = x;
        }
        if let Some(n) = self.lambda_steps {
            c.lambda.steps = n;
        }
        if let Some(s) = self.sign {
            c.galerkin.sign = s;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        Ok(c)
    }
}

fn execute(cli: &Cli) -> Result<Vec<String>, CliError> {
    if let Some(n) = cli.flags.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Other(e.to_string()))?;
    }
    let (task, rho_target) = match cli.command {
        Command::Check { rounds } => {
            let failed = check::run_checks(cli.flags.seed, rounds)?;
            return if failed == 0 {
                Ok(Vec::new())
            } else {
                Err(CliError::Other(format!("{failed} self-checks failed")))
            };
        }
        Command::Eigs => (Some(Task::Mode(Mode::Eigs)), RhoTarget::Disk),
        Command::Thm1 | Command::Thm2 => (Some(Task::Mode(Mode::Compare)), RhoTarget::Disk),
        Command::Thm3 => (Some(Task::Mode(Mode::Counting)), RhoTarget::Tail),
        Command::LemmaDisk => (Some(Task::LemmaDisk), RhoTarget::Disk),
        Command::Sandwich => (Some(Task::Mode(Mode::Galerkin)), RhoTarget::Disk),
        Command::Run => (None, RhoTarget::Disk),
    };
    let mut cfg = cli.flags.resolve(rho_target)?;
    match cli.command {
        Command::Thm1 if cfg.disk.is_none() => return Err(CliError::Schema("thm1 needs --rho".into())),
        Command::Thm2 if cfg.decay.is_none() => return Err(CliError::Schema("thm2 needs --beta/--gamma".into())),
        Command::Thm3 if cfg.tail.is_none() => cfg.tail = Some(PowerTail { tau: 1.0, rho: 1.0 }),
        Command::Sandwich if cfg.metric.is_none() && run::scalar_symbol(&cfg)?.is_none() => {
            cfg.decay = Some(Decay { beta: 1.0, gamma: 1.0 })
        }
        _ => {}
    }
    // The subcommand fixes the family so that a config file with several stays unambiguous.
    match cli.command {
        Command::Thm1 | Command::LemmaDisk => (cfg.decay, cfg.tail, cfg.symbol) = (None, None, None),
        Command::Thm2 => (cfg.disk, cfg.tail, cfg.symbol) = (None, None, None),
        Command::Thm3 => (cfg.disk, cfg.decay, cfg.symbol) = (None, None, None),
        _ => {}
    }
    let task = task.unwrap_or(Task::Mode(cfg.mode));
    if let Task::Mode(m) = task {
        cfg.mode = m;
    }
    run::run(&cfg, task)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(warnings) if warnings.is_empty() => ExitCode::SUCCESS,
        Ok(warnings) => {
            eprintln!("landau: {} truncation warning(s)", warnings.len());
            ExitCode::from(CliError::Truncation(String::new()).exit_code() as u8)
        }
        Err(e) => {
            eprintln!("landau: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
