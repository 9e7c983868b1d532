use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::protocol::{ProtocolConfig, DEFAULT_CONFIG_TOML};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSection {
    pub mean_photon_grid: Vec<f64>,
    pub delay_grid_us: Vec<f64>,
    /// Operational reflectivities of (Bob, Alice) used by the coupling fit.
    pub reflectivity_targets: [f64; 2],
    pub seed: u64,
    #[serde(default)]
    pub shots: Option<u64>,
}

/// Everything one harness run needs: protocol defaults plus experiment
/// plumbing, read from one TOML document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    pub protocol: ProtocolConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::from_toml(DEFAULT_CONFIG_TOML).expect("shipped default config parses")
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(SimError::Config(format!("{name} is empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(SimError::Config(format!("{name} holds a non-finite value")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SimError::Config(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| SimError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| SimError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        check_grid("mean_photon_grid", &self.experiment.mean_photon_grid)?;
        check_grid("delay_grid_us", &self.experiment.delay_grid_us)?;
        for t in self.experiment.reflectivity_targets {
            if !(t > 0.0 && t <= 1.0) {
                return Err(SimError::OutOfRange {
                    name: "reflectivity target",
                    value: t,
                    range: "(0, 1]",
                });
            }
        }
        if self.experiment.shots == Some(0) {
            return Err(SimError::Config("shots must be positive".into()));
        }
        self.protocol.validate()
    }
}
