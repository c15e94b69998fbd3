//! The JSON sweep configuration.

use std::path::Path;

use fadeperf_core::fading::{ChannelModel, GammaBranch};
use fadeperf_core::perf::{MetricKind, MetricSpec, DEFAULT_GCQ_NODES};
use serde::Deserialize;

use crate::error::CliError;

/// Evaluation paths a sweep can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed form: the hyper-Fox H sum for one branch, the Gamma-sum G
    /// form for identical Nakagami branches.
    Closed,
    /// Adaptive quadrature over the density (one branch) or over s = tan θ.
    Quadrature,
    /// Chebyshev rule on the MGF derivative.
    Gcq,
    /// Monte Carlo.
    Mc,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Closed => "closed",
            Self::Quadrature => "quadrature",
            Self::Gcq => "gcq",
            Self::Mc => "mc",
        }
    }
}

/// Metric by row name; `a` is required for the correlated and capacity
/// rows, `a`, `b` and `n` for custom.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricConfig {
    pub kind: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<u8>,
}

impl MetricConfig {
    pub fn to_spec(&self) -> Result<MetricSpec, CliError> {
        let need = |v: Option<f64>, what: &str| {
            v.ok_or_else(|| CliError::Config(format!("metric '{}' needs '{what}'", self.kind)))
        };
        let spec = match self.kind.as_str() {
            "bep_coherent_fsk" => MetricSpec::bep_coherent_fsk(),
            "bep_noncoherent_fsk" => MetricSpec::bep_noncoherent_fsk(),
            "bep_coherent_psk" => MetricSpec::bep_coherent_psk(),
            "bep_dpsk" => MetricSpec::bep_dpsk(),
            "bep_correlated" => MetricSpec::bep_correlated(need(self.a, "a")?)?,
            "capacity" => MetricSpec::capacity(self.a.unwrap_or(1.0))?,
            "custom" => {
                let n = self.n.ok_or_else(|| CliError::Config("metric 'custom' needs 'n'".into()))?;
                MetricSpec::custom(need(self.a, "a")?, need(self.b, "b")?, n)?
            }
            other => return Err(CliError::Config(format!("unknown metric kind '{other}'"))),
        };
        let fixed = !matches!(spec.kind, MetricKind::Custom | MetricKind::BepCorrelated | MetricKind::Capacity);
        if fixed && (self.a.is_some() || self.b.is_some() || self.n.is_some()) {
            return Err(CliError::Config(format!("metric '{}' has fixed (a, b, n)", self.kind)));
        }
        Ok(spec)
    }
}

/// One component of a hyper-Gamma mixture; `mean` is relative, the grid
/// rescales the whole mixture.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchConfig {
    pub weight: f64,
    pub m: f64,
    #[serde(default = "one")]
    pub mean: f64,
}

fn one() -> f64 {
    1.0
}

/// A channel model without its power; the sweep sets the mean SNR.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    OneSidedGaussian,
    Exponential,
    Nakagami { m: f64 },
    Weibull { shape: f64 },
    HyperGamma { branches: Vec<BranchConfig> },
    Hoyt { q: f64, terms: Option<usize> },
    Rice { n: f64, terms: Option<usize> },
    Maxwell,
    Lognormal { sigma_db: f64, nodes: Option<usize> },
    KDist { ms: f64 },
    GeneralizedK { m: f64, ms: f64 },
    GeneralizedGamma { m: f64, shape: f64 },
    Egk { m: f64, shape: f64, ms: f64, shadow_shape: f64 },
}

/// A branch: the model plus an optional power offset against the grid.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ChannelConfig {
    #[serde(flatten)]
    pub model: ModelConfig,
    #[serde(default)]
    pub gain_db: f64,
}

impl ChannelConfig {
    /// The model with mean SNR 10^((snr_db + gain_db)/10).
    pub fn at_snr_db(&self, snr_db: f64) -> Result<ChannelModel, CliError> {
        let unit = self.unit_model();
        unit.validate()?;
        let target = 10f64.powf((snr_db + self.gain_db) / 10.0);
        let model = unit.scaled(target / unit.mean()?);
        model.validate()?;
        Ok(model)
    }

    fn unit_model(&self) -> ChannelModel {
        use ChannelModel as M;
        let mean = 1.0;
        match &self.model {
            ModelConfig::OneSidedGaussian => M::OneSidedGaussian { mean },
            ModelConfig::Exponential => M::Exponential { mean },
            ModelConfig::Nakagami { m } => M::Nakagami { m: *m, mean },
            ModelConfig::Weibull { shape } => M::Weibull { shape: *shape, mean },
            ModelConfig::HyperGamma { branches } => M::HyperGamma {
                branches: branches.iter().map(|b| GammaBranch { weight: b.weight, m: b.m, mean: b.mean }).collect(),
            },
            ModelConfig::Hoyt { q, terms } => match terms {
                Some(terms) => M::Hoyt { q: *q, mean, terms: *terms },
                None => M::hoyt(*q, mean),
            },
            ModelConfig::Rice { n, terms } => match terms {
                Some(terms) => M::Rice { n: *n, mean, terms: *terms },
                None => M::rice(*n, mean),
            },
            ModelConfig::Maxwell => M::Maxwell { mean },
            ModelConfig::Lognormal { sigma_db, nodes } => match nodes {
                Some(nodes) => M::Lognormal { mu_db: 0.0, sigma_db: *sigma_db, nodes: *nodes },
                None => M::lognormal(0.0, *sigma_db),
            },
            ModelConfig::KDist { ms } => M::KDist { ms: *ms, mean },
            ModelConfig::GeneralizedK { m, ms } => M::GeneralizedK { m: *m, ms: *ms, mean },
            ModelConfig::GeneralizedGamma { m, shape } => M::GeneralizedGamma { m: *m, shape: *shape, mean },
            ModelConfig::Egk { m, shape, ms, shadow_shape } => {
                M::Egk { m: *m, shape: *shape, ms: *ms, shadow_shape: *shadow_shape, mean }
            }
        }
    }
}

/// Evenly spaced SNR points in dB, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridConfig {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// The whole sweep document.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub metric: MetricConfig,
    /// One entry per combined branch.
    pub channels: Vec<ChannelConfig>,
    pub snr_grid_db: GridConfig,
    pub methods: Vec<Method>,
    #[serde(rename = "gcq_N", alias = "gcq_n", default = "default_gcq_nodes")]
    pub gcq_nodes: usize,
    #[serde(default = "default_mc_samples")]
    pub mc_samples: u64,
    #[serde(default)]
    pub mc_seed: u64,
    pub output_path: Option<String>,
}

fn default_gcq_nodes() -> usize {
    DEFAULT_GCQ_NODES
}

fn default_mc_samples() -> u64 {
    1_000_000
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig { path: path.into(), source })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.into()));
        let g = &self.snr_grid_db;
        if !(g.start.is_finite() && g.stop.is_finite()) {
            return bad("grid bounds must be finite");
        }
        if !(g.step > 0.0 && g.step.is_finite()) {
            return bad("grid step must be positive");
        }
        if g.start > g.stop {
            return bad("grid start must not exceed stop");
        }
        if self.methods.is_empty() {
            return bad("at least one method is required");
        }
        if self.channels.is_empty() {
            return bad("at least one channel is required");
        }
        if self.gcq_nodes == 0 {
            return bad("gcq_N must be positive");
        }
        self.metric.to_spec()?;
        for c in &self.channels {
            c.at_snr_db(g.start)?;
        }
        if self.methods.contains(&Method::Mc) && self.mc_samples < fadeperf_core::mc::MIN_SAMPLES {
            return bad("mc_samples must be at least 1000");
        }
        if self.methods.contains(&Method::Closed) && self.channels.len() > 1 && self.identical_nakagami().is_none() {
            return bad("the closed method needs one branch or identical nakagami/exponential branches");
        }
        Ok(())
    }

    pub fn metric(&self) -> Result<MetricSpec, CliError> {
        self.metric.to_spec()
    }

    /// Fading figure when every branch is the same Nakagami (or exponential) model.
    pub fn identical_nakagami(&self) -> Option<f64> {
        let first = &self.channels[0];
        let m = match first.model {
            ModelConfig::Nakagami { m } => m,
            ModelConfig::Exponential => 1.0,
            _ => return None,
        };
        self.channels.iter().all(|c| c == first).then_some(m)
    }
}
