use std::path::{Path, PathBuf};

use landau_core::galerkin::Sign;
use landau_core::{HermitianSymbolMatrix, RadialSymbol};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Eigs,
    Asymp,
    Compare,
    Counting,
    Galerkin,
}

/// `e^{−γ|x|^{2β}}` family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decay {
    pub beta: f64,
    pub gamma: f64,
}

/// Indicator of the disk of radius `√(2ϱ/b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Disk {
    pub rho: f64,
}

/// `τ r^{−ρ}` outside the unit disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerTail {
    pub tau: f64,
    pub rho: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GalerkinSettings {
    pub max_level: Option<usize>,
    pub max_index: usize,
    pub sign: Sign,
    pub max_k0: usize,
    /// Scale applied to a scalar family when it stands in for the metric.
    pub amplitude: f64,
}

impl Default for GalerkinSettings {
    fn default() -> Self {
        Self {
            max_level: None,
            max_index: 40,
            sign: Sign::Plus,
            max_k0: 3,
            amplitude: 0.02,
        }
    }
}

/// One experiment; every field has a default so that flags alone suffice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub b: f64,
    pub q: usize,
    /// Scalar potential `V` for `P_q V P_q`.
    pub symbol: Option<RadialSymbol>,
    /// Metric perturbation `m` (Galerkin runs and `𝒯_q`).
    pub metric: Option<HermitianSymbolMatrix>,
    pub decay: Option<Decay>,
    pub disk: Option<Disk>,
    pub tail: Option<PowerTail>,
    pub k_max: usize,
    /// Indices reported by `compare`; defaults to `1..k_max`.
    pub k_grid: Option<Vec<usize>>,
    pub lambda: LambdaGrid,
    pub galerkin: GalerkinSettings,
    /// Output directory; left out of the recorded config and its hash.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Eigs,
            b: 1.0,
            q: 0,
            symbol: None,
            metric: None,
            decay: None,
            disk: None,
            tail: None,
            k_max: 200,
            k_grid: None,
            lambda: LambdaGrid {
                min: 1e-12,
                max: 1e-2,
                steps: 21,
            },
            galerkin: GalerkinSettings::default(),
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("landau-out"))
    }

    /// The config as recorded in outputs: everything except the output path.
    pub fn recorded(&self) -> Self {
        Self {
            out: None,
            ..self.clone()
        }
    }

    /// Rejects configurations no mode can run.
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Schema(m));
        if !(self.b > 0.0 && self.b.is_finite()) {
            return bad(format!("b must be positive, got {}", self.b));
        }
        if let Some(d) = self.decay {
            if !(d.beta > 0.0 && d.beta.is_finite()) {
                return bad(format!("beta must be positive, got {}", d.beta));
            }
            if !(d.gamma > 0.0 && d.gamma.is_finite()) {
                return bad(format!("gamma must be positive, got {}", d.gamma));
            }
        }
        if let Some(d) = self.disk {
            if !(d.rho > 0.0 && d.rho.is_finite()) {
                return bad(format!("rho must be positive, got {}", d.rho));
            }
        }
        if let Some(t) = self.tail {
            if !(t.tau > 0.0 && t.rho > 0.0) {
                return bad(format!("tail needs tau, rho > 0, got {}, {}", t.tau, t.rho));
            }
        }
        let g = self.galerkin;
        if !(g.amplitude.is_finite() && g.amplitude > 0.0) || g.max_index < 2 {
            return bad("galerkin needs amplitude > 0 and max_index >= 2".into());
        }
        if let Some(grid) = &self.k_grid {
            if grid.iter().any(|&k| k < 2 || k >= self.k_max) {
                return bad(format!("k_grid entries must lie in [2, {})", self.k_max));
            }
        }
        if self.k_max < 4 {
            return bad(format!("K must be at least 4, got {}", self.k_max));
        }
        let l = self.lambda;
        if !(l.min > 0.0 && l.max >= l.min && l.steps > 0) {
            return bad(format!("bad lambda grid [{}, {}] x {}", l.min, l.max, l.steps));
        }
        let sources = [
            self.symbol.is_some(),
            self.decay.is_some(),
            self.disk.is_some(),
            self.tail.is_some(),
        ]
        .iter()
        .filter(|x| **x)
        .count();
        if sources > 1 {
            return bad("give at most one of symbol, decay, disk, tail".into());
        }
        match self.mode {
            Mode::Asymp | Mode::Compare if self.decay.is_none() && self.disk.is_none() => {
                bad("asymp and compare need a decay or disk family".into())
            }
            Mode::Galerkin if self.metric.is_none() && sources == 0 => {
                bad("galerkin needs a metric or a scalar family".into())
            }
            _ => Ok(()),
        }
    }
}
