//! Flat `key = value` config files for training runs.
//!
//! Recognized keys: `dim`, `gamma`, `alpha`, `beta`, `mu`, `epsilon`,
//! `max_epochs`, `seed`, `pull_norm`, `push_norm`, `baseline`. Unknown
//! keys are rejected by name. Values given on the command line override
//! values from the file.

use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use lmnne::model::NormKind;
use lmnne::train::TrainConfig;

/// Training settings gathered from one source (file or flags); `None`
/// means "not specified here".
#[derive(Debug, Clone, Default)]
pub struct PartialTrainConfig {
    pub dim: Option<usize>,
    pub gamma: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub epsilon: Option<f64>,
    pub max_epochs: Option<usize>,
    pub seed: Option<u64>,
    pub pull_norm: Option<NormKind>,
    pub push_norm: Option<NormKind>,
    pub baseline: Option<bool>,
}

impl PartialTrainConfig {
    /// Layer these settings on top of `base`.
    pub fn apply(&self, mut base: TrainConfig) -> TrainConfig {
        if let Some(v) = self.dim {
            base.dim = v;
        }
        if let Some(v) = self.gamma {
            base.gamma = v;
        }
        if let Some(v) = self.alpha {
            base.alpha = v;
        }
        if let Some(v) = self.beta {
            base.beta = v;
        }
        if let Some(v) = self.mu {
            base.mu = v;
        }
        if let Some(v) = self.epsilon {
            base.epsilon = v;
        }
        if let Some(v) = self.max_epochs {
            base.max_epochs = v;
        }
        if let Some(v) = self.seed {
            base.seed = v;
        }
        if let Some(v) = self.pull_norm {
            base.pull_norm = v;
        }
        if let Some(v) = self.push_norm {
            base.push_norm = v;
        }
        if let Some(v) = self.baseline {
            base.baseline = v;
        }
        base
    }
}

fn parse<T: FromStr>(key: &str, value: &str, lineno: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| anyhow::anyhow!("line {lineno}: invalid value for `{key}`: {e}"))
}

fn parse_bool(key: &str, value: &str, lineno: usize) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => bail!("line {lineno}: invalid value for `{key}`: `{other}` is not a boolean"),
    }
}

/// Parse a config file. `#`-prefixed and blank lines are ignored; every
/// other line must be `key = value` with a recognized key.
pub fn parse_config_file(path: &Path) -> Result<PartialTrainConfig> {
    let contents = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let mut cfg = PartialTrainConfig::default();
    for (idx, raw) in contents.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {lineno}: expected `key = value`, got `{line}`");
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "dim" => cfg.dim = Some(parse(key, value, lineno)?),
            "gamma" => cfg.gamma = Some(parse(key, value, lineno)?),
            "alpha" => cfg.alpha = Some(parse(key, value, lineno)?),
            "beta" => cfg.beta = Some(parse(key, value, lineno)?),
            "mu" => cfg.mu = Some(parse(key, value, lineno)?),
            "epsilon" => cfg.epsilon = Some(parse(key, value, lineno)?),
            "max_epochs" => cfg.max_epochs = Some(parse(key, value, lineno)?),
            "seed" => cfg.seed = Some(parse(key, value, lineno)?),
            "pull_norm" => {
                cfg.pull_norm = Some(
                    value
                        .parse::<NormKind>()
                        .map_err(|e| anyhow::anyhow!("line {lineno}: {e}"))?,
                )
            }
            "push_norm" => {
                cfg.push_norm = Some(
                    value
                        .parse::<NormKind>()
                        .map_err(|e| anyhow::anyhow!("line {lineno}: {e}"))?,
                )
            }
            "baseline" => cfg.baseline = Some(parse_bool(key, value, lineno)?),
            unknown => bail!("line {lineno}: unknown config key `{unknown}`"),
        }
    }
    Ok(cfg)
}
