//! Experiment configuration: a flat `key = value` file whose keys mirror
//! the command-line flags.

use std::path::PathBuf;

use serde::Serialize;

use crate::embed::{EmbeddingConfig, DEFAULT_CUSTOM_KAPPA};

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Paper,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub radius: usize,
    /// Pair samples; 0 means every pair of the ball.
    pub samples: usize,
    pub seed: u64,
    pub mode: ModeName,
    pub kappa: usize,
    /// Longest word drawn when sampling elements outside the ball.
    pub sample_len: usize,
    /// Census floor on group distance.
    pub min_distance: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            radius: 5,
            samples: 10_000,
            seed: 0,
            mode: ModeName::Custom,
            kappa: DEFAULT_CUSTOM_KAPPA,
            sample_len: 12,
            min_distance: 12,
            out: None,
            format: Format::Jsonl,
        }
    }
}

pub const KEYS: [&str; 9] =
    ["radius", "samples", "seed", "mode", "kappa", "sample-len", "min-distance", "out", "format"];

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, HarnessError> {
    value.parse().map_err(|_| HarnessError::Config(format!("{key}: expected a number, got {value:?}")))
}

impl ExperimentConfig {
    /// Sets one key. Underscores and dashes are interchangeable in keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        let value = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "radius" => self.radius = number(key, value)?,
            "samples" => self.samples = number(key, value)?,
            "seed" => self.seed = number(key, value)?,
            "kappa" => {
                self.kappa = number(key, value)?;
                if self.kappa == 0 {
                    return Err(HarnessError::Config("kappa must be positive".into()));
                }
            }
            "sample-len" => self.sample_len = number(key, value)?,
            "min-distance" => self.min_distance = number(key, value)?,
            "mode" => {
                self.mode = match value {
                    "paper" => ModeName::Paper,
                    "custom" => ModeName::Custom,
                    other => return Err(HarnessError::Config(format!("unknown mode {other:?}"))),
                }
            }
            "format" => {
                self.format = match value {
                    "jsonl" => Format::Jsonl,
                    "csv" => Format::Csv,
                    other => return Err(HarnessError::Config(format!("unknown format {other:?}"))),
                }
            }
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(HarnessError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies every `key = value` line; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), HarnessError> {
        for (number, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", number + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self, HarnessError> {
        let mut config = ExperimentConfig::default();
        config.apply_text(text)?;
        Ok(config)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "radius = {}\nsamples = {}\nseed = {}\nmode = {}\nkappa = {}\nsample-len = {}\nmin-distance = {}\nformat = {}\n",
            self.radius,
            self.samples,
            self.seed,
            match self.mode {
                ModeName::Paper => "paper",
                ModeName::Custom => "custom",
            },
            self.kappa,
            self.sample_len,
            self.min_distance,
            match self.format {
                Format::Jsonl => "jsonl",
                Format::Csv => "csv",
            },
        );
        if let Some(path) = &self.out {
            out += &format!("out = {}\n", path.display());
        }
        out
    }

    pub fn embedding(&self) -> EmbeddingConfig {
        match self.mode {
            ModeName::Paper => EmbeddingConfig::paper(),
            ModeName::Custom => EmbeddingConfig::custom(self.kappa),
        }
    }
}
