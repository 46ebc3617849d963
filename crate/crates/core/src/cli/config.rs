use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::reduction::c0;

/// Sweep flags; any flag given on the command line overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// TOML file with sweep settings
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long)]
    pub c_min: Option<f64>,
    #[arg(long)]
    pub c_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    c_min: Option<f64>,
    c_max: Option<f64>,
    samples: Option<usize>,
    max_iter: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub c_min: f64,
    pub c_max: f64,
    pub samples: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            c_min: 0.01,
            c_max: c0() - 1e-3,
            samples: 200,
            max_iter: 2000,
            tol: 1e-10,
            seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let file: SweepFile = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Self::default().overlay(file).validated()
    }

    pub fn resolve(args: &SweepArgs) -> Result<Self, CliError> {
        let base = match &args.config {
            Some(path) => Self::default().overlay(read_file(path)?),
            None => Self::default(),
        };
        base.overlay(SweepFile {
            c_min: args.c_min,
            c_max: args.c_max,
            samples: args.samples,
            max_iter: args.max_iter,
            tol: args.tol,
            seed: args.seed,
        })
        .validated()
    }

    fn overlay(self, f: SweepFile) -> Self {
        Self {
            c_min: f.c_min.unwrap_or(self.c_min),
            c_max: f.c_max.unwrap_or(self.c_max),
            samples: f.samples.unwrap_or(self.samples),
            max_iter: f.max_iter.unwrap_or(self.max_iter),
            tol: f.tol.unwrap_or(self.tol),
            seed: f.seed.unwrap_or(self.seed),
        }
    }

    fn validated(self) -> Result<Self, CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.to_string()));
        if !self.c_min.is_finite() || !self.c_max.is_finite() {
            return bad("c_min and c_max must be finite");
        }
        if self.c_min < 0.0 || self.c_max > c0() {
            return bad("sweep range must lie in [0, c0]");
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return bad("tol must be positive");
        }
        if self.max_iter < 2 {
            return bad("max_iter must be at least 2");
        }
        Ok(self)
    }

    /// Evenly spaced parameters; empty when `c_min >= c_max` or `samples == 0`.
    pub fn grid(&self) -> Vec<f64> {
        if self.samples == 0 || self.c_min >= self.c_max {
            return Vec::new();
        }
        if self.samples == 1 {
            return vec![self.c_min];
        }
        let step = (self.c_max - self.c_min) / (self.samples - 1) as f64;
        (0..self.samples)
            .map(|i| {
                if i + 1 == self.samples {
                    self.c_max
                } else {
                    self.c_min + step * i as f64
                }
            })
            .collect()
    }
}

fn read_file(path: &Path) -> Result<SweepFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    toml::from_str(&text).map_err(|e| CliError::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.toml");
        std::fs::write(&path, "c_min = 0.5\nc_max = 1.0\nsamples = 7\nseed = 3\n").unwrap();
        let args = SweepArgs {
            config: Some(path),
            samples: Some(11),
            ..Default::default()
        };
        let cfg = SweepConfig::resolve(&args).unwrap();
        assert_eq!(
            (cfg.c_min, cfg.c_max, cfg.samples, cfg.seed),
            (0.5, 1.0, 11, 3)
        );
        assert_eq!(cfg.max_iter, SweepConfig::default().max_iter);
    }

    #[test]
    fn grids() {
        let cfg = SweepConfig {
            c_min: 1.0,
            c_max: 1.5,
            samples: 3,
            ..Default::default()
        };
        assert_eq!(cfg.grid(), vec![1.0, 1.25, 1.5]);
        assert_eq!(SweepConfig { samples: 1, ..cfg }.grid(), vec![1.0]);
        assert!(SweepConfig { c_max: 1.0, ..cfg }.grid().is_empty());
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(SweepConfig::from_toml("c_max = 3.0").is_err());
        assert!(SweepConfig::from_toml("tol = 0.0").is_err());
        assert!(SweepConfig::from_toml("bogus = 1").is_err());
        assert_eq!(SweepConfig::from_toml("").unwrap(), SweepConfig::default());
    }
}
