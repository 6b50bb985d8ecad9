use landau_core::asymptotics::{
    compact_support_expansion, decay_expansion, disk_prediction, mu_from_gamma, AsymptoticExpansion,
};
use landau_core::counting::{
    below_floor, count_above_monotone, cq_constant, log_grid, CountingCurve, CountingLaw, CurvePoint,
};
use landau_core::galerkin::{sandwich_check, TruncationSpec};
use landau_core::symbol::tq_symbol;
use landau_core::toeplitz::{quadratic_form_eigs, toeplitz_diagonal, toeplitz_eigs_radial, SequenceMeta};
use landau_core::{Cutoff, EigenvalueSequence, HermitianSymbolMatrix, LogScalar, MagneticContext, RadialSymbol};

use crate::config::{ExperimentConfig, Mode};
use crate::error::CliError;
use crate::output::{fmt_f64, row, OutputDir};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Mode(Mode),
    LemmaDisk,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Mode(Mode::Eigs) => "eigs",
            Task::Mode(Mode::Asymp) => "asymp",
            Task::Mode(Mode::Compare) => "compare",
            Task::Mode(Mode::Counting) => "counting",
            Task::Mode(Mode::Galerkin) => "galerkin",
            Task::LemmaDisk => "lemma-disk",
        }
    }
}

/// Runs one task and writes its files; returns the truncation warnings.
pub fn run(cfg: &ExperimentConfig, task: Task) -> Result<Vec<String>, CliError> {
    cfg.validate()?;
    let ctx = MagneticContext::new(cfg.b)?;
    let mut out = OutputDir::create(cfg)?;
    log::info!("{} -> {} (config {})", task.name(), out.path().display(), out.hash());
    let warnings = match task {
        Task::Mode(Mode::Eigs) => eigs(cfg, &ctx, &mut out)?,
        Task::Mode(Mode::Asymp) => {
            out.json("expansion.json", &expansion(cfg)?)?;
            Vec::new()
        }
        Task::Mode(Mode::Compare) => compare(cfg, &ctx, &mut out)?,
        Task::Mode(Mode::Counting) => counting(cfg, &ctx, &mut out)?,
        Task::Mode(Mode::Galerkin) => galerkin(cfg, &ctx, &mut out)?,
        Task::LemmaDisk => lemma_disk(cfg, &ctx, &mut out)?,
    };
    for w in &warnings {
        log::warn!("{w}");
    }
    out.finish(task.name(), cfg, &warnings)?;
    Ok(warnings)
}

/// The scalar potential described by the config, if any.
pub fn scalar_symbol(cfg: &ExperimentConfig) -> Result<Option<RadialSymbol>, CliError> {
    if let Some(s) = &cfg.symbol {
        return Ok(Some(s.clone()));
    }
    if let Some(d) = cfg.decay {
        return Ok(Some(RadialSymbol::decaying(1.0, d.gamma, d.beta)));
    }
    if let Some(d) = cfg.disk {
        let radius = (2.0 * d.rho / cfg.b).sqrt();
        return Ok(Some(
            RadialSymbol::constant(1.0).with_cutoff(Cutoff::Inside { radius })?,
        ));
    }
    if let Some(t) = cfg.tail {
        return Ok(Some(
            RadialSymbol::term(t.tau, -t.rho / 2.0, 0.0, 1.0).with_cutoff(Cutoff::Outside { radius: 1.0 })?,
        ));
    }
    Ok(None)
}

fn require_scalar(cfg: &ExperimentConfig) -> Result<RadialSymbol, CliError> {
    scalar_symbol(cfg)?.ok_or_else(|| CliError::Schema("this task needs a symbol, decay, disk or tail".into()))
}

/// `𝒯_q` of `m = p I` with `p = τ r^{−ρ}/Λ_q` outside the unit disk, which is
/// `τ r^{−ρ}` there.
fn tail_tq(cfg: &ExperimentConfig, ctx: &MagneticContext) -> Result<Option<RadialSymbol>, CliError> {
    let Some(t) = cfg.tail else { return Ok(None) };
    let p = RadialSymbol::term(t.tau / ctx.landau_level(cfg.q), -t.rho / 2.0, 0.0, 1.0)
        .with_cutoff(Cutoff::Outside { radius: 1.0 })?;
    Ok(Some(tq_symbol(&HermitianSymbolMatrix::scalar(p), cfg.q, cfg.b)?))
}

fn sequence(cfg: &ExperimentConfig, ctx: &MagneticContext) -> Result<EigenvalueSequence, CliError> {
    if let Some(m) = &cfg.metric {
        return Ok(quadratic_form_eigs(ctx, m, cfg.q, cfg.k_max)?);
    }
    if let Some(tq) = tail_tq(cfg, ctx)? {
        return Ok(toeplitz_eigs_radial(ctx, &tq, cfg.q, cfg.k_max)?);
    }
    Ok(toeplitz_eigs_radial(ctx, &require_scalar(cfg)?, cfg.q, cfg.k_max)?)
}

fn eigs(cfg: &ExperimentConfig, ctx: &MagneticContext, out: &mut OutputDir) -> Result<Vec<String>, CliError> {
    let seq = sequence(cfg, ctx)?;
    out.csv("eigs.csv", |buf| Ok(seq.write_csv(buf, &[])?))?;
    Ok(seq.meta.warnings.clone())
}

fn expansion(cfg: &ExperimentConfig) -> Result<AsymptoticExpansion, CliError> {
    if let Some(d) = cfg.decay {
        let mu = mu_from_gamma(d.gamma, d.beta, cfg.b)?;
        return Ok(decay_expansion(d.beta, mu)?);
    }
    if let Some(d) = cfg.disk {
        return Ok(compact_support_expansion(Some(d.rho))?);
    }
    Err(CliError::Schema("expansions need a decay or disk family".into()))
}

fn k_values(cfg: &ExperimentConfig) -> Vec<usize> {
    cfg.k_grid.clone().unwrap_or_else(|| (2..cfg.k_max).collect())
}

fn compare(cfg: &ExperimentConfig, ctx: &MagneticContext, out: &mut OutputDir) -> Result<Vec<String>, CliError> {
    let e = expansion(cfg)?;
    let seq = toeplitz_eigs_radial(ctx, &require_scalar(cfg)?, cfg.q, cfg.k_max)?;
    out.csv("compare.csv", |buf| {
        row(
            buf,
            &[
                "k",
                "ln_nu_numeric",
                "ln_nu_predicted",
                "residual",
                "residual_over_log_k",
            ]
            .map(String::from),
        );
        for k in k_values(cfg) {
            let num = seq.get(k).map_or(f64::NAN, |v| v.ln_abs());
            let pred = e.eval(k as f64);
            let res = num - pred;
            row(
                buf,
                &[
                    k.to_string(),
                    fmt_f64(num),
                    fmt_f64(pred),
                    fmt_f64(res),
                    fmt_f64(res / (k as f64).ln()),
                ],
            );
        }
        Ok(())
    })?;
    out.json("expansion.json", &e)?;
    Ok(seq.meta.warnings.clone())
}

fn counting(cfg: &ExperimentConfig, ctx: &MagneticContext, out: &mut OutputDir) -> Result<Vec<String>, CliError> {
    let lambdas = log_grid(cfg.lambda.min, cfg.lambda.max, cfg.lambda.steps)?;
    let mut warnings = Vec::new();
    let curve = if let (Some(t), Some(tq)) = (cfg.tail, tail_tq(cfg, ctx)?) {
        let nu = |k: usize| toeplitz_diagonal(ctx, &tq, cfg.q, k);
        let floor = nu(cfg.k_max)?;
        let c = cq_constant(t.tau, t.rho, cfg.b)?;
        let mut points = Vec::new();
        for &lambda in &lambdas {
            if !(floor < LogScalar::from_f64(lambda / 10.0)) {
                warnings.push(format!(
                    "truncation floor {:.3e} not below lambda/10 at lambda = {lambda:.3e}; raise K",
                    floor.to_f64()
                ));
            }
            if !(floor < LogScalar::from_f64(lambda)) {
                continue;
            }
            let count = count_above_monotone(nu, lambda, cfg.k_max)?;
            let predicted = c * lambda.powf(-2.0 / t.rho);
            points.push(CurvePoint {
                lambda,
                count,
                predicted,
                ratio: count as f64 / predicted,
            });
        }
        let source = SequenceMeta {
            operator: format!("T_{}", cfg.q),
            truncation: cfg.k_max,
            b: cfg.b,
            level: cfg.q,
            warnings: warnings.clone(),
        };
        CountingCurve { points, source }
    } else {
        let v = require_scalar(cfg)?;
        let seq = toeplitz_eigs_radial(ctx, &v, cfg.q, cfg.k_max)?;
        warnings.extend(seq.meta.warnings.iter().cloned());
        for &lambda in &lambdas {
            if below_floor(&seq, lambda) {
                warnings.push(format!("lambda = {lambda:.3e} is below the truncation floor; raise K"));
            }
        }
        let law = if let Some(d) = cfg.decay {
            CountingLaw::Exponential {
                beta: d.beta,
                mu: mu_from_gamma(d.gamma, d.beta, cfg.b)?,
            }
        } else if cfg.disk.is_some() {
            CountingLaw::CompactSupport
        } else {
            CountingLaw::PowerLike { b: cfg.b, symbol: &v }
        };
        CountingCurve::new(&seq, &lambdas, law)?
    };
    out.csv("counting.csv", |buf| Ok(curve.write_csv(buf)?))?;
    Ok(warnings)
}

fn galerkin(cfg: &ExperimentConfig, ctx: &MagneticContext, out: &mut OutputDir) -> Result<Vec<String>, CliError> {
    let g = cfg.galerkin;
    let m = match &cfg.metric {
        Some(m) => m.clone(),
        None => HermitianSymbolMatrix::scalar(require_scalar(cfg)?.scale(g.amplitude)),
    };
    let spec = TruncationSpec::new(cfg.q, g.max_level.unwrap_or(cfg.q + 3), g.max_index)?;
    let report = sandwich_check(ctx, &m, &spec, g.sign, g.max_k0)?;
    if !report.pass {
        log::warn!("cluster bounds fail at k = {:?}", report.violations);
    }
    out.csv("cluster.csv", |buf| {
        row(buf, &["k", "shift", "lower", "upper", "holds"].map(String::from));
        for r in &report.rows {
            row(
                buf,
                &[
                    r.k.to_string(),
                    fmt_f64(r.shift),
                    fmt_f64(r.lower),
                    fmt_f64(r.upper),
                    r.holds.to_string(),
                ],
            );
        }
        Ok(())
    })?;
    out.json("sandwich.json", &report)?;
    Ok(Vec::new())
}

fn lemma_disk(cfg: &ExperimentConfig, ctx: &MagneticContext, out: &mut OutputDir) -> Result<Vec<String>, CliError> {
    let Some(d) = cfg.disk else {
        return Err(CliError::Schema("lemma-disk needs a disk (--rho)".into()));
    };
    let seq = toeplitz_eigs_radial(ctx, &require_scalar(cfg)?, cfg.q, cfg.k_max)?;
    out.csv("lemma_disk.csv", |buf| {
        row(
            buf,
            &["k", "ln_nu_numeric", "ln_nu_predicted", "ratio"].map(String::from),
        );
        for k in 1..cfg.k_max {
            let num = seq.get(k).map_or(f64::NAN, |v| v.ln_abs());
            let pred = disk_prediction(cfg.q, d.rho, k)?.ln_abs();
            row(
                buf,
                &[k.to_string(), fmt_f64(num), fmt_f64(pred), fmt_f64((num - pred).exp())],
            );
        }
        Ok(())
    })?;
    Ok(seq.meta.warnings.clone())
}
