//! The JSON run configuration shared by the command-line tools.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::error::RouterError;
use crate::oracle::{LatticeConfig, OracleError};
use crate::params::RouterParams;
use crate::sweep::{GridSpec, SweepError, SweepGrid};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Params(#[from] RouterError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Grid(#[from] SweepError),
}

/// `{"params": {...}, "oracle": {...}, "grid": {...}}`; the last two are optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: RouterParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<LatticeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { params: RouterParams::figure_base(), oracle: None, grid: None }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate()?;
        if let Some(oracle) = &self.oracle {
            oracle.validate()?;
        }
        if let Some(grid) = self.sweep_grid() {
            grid.validate()?;
        }
        Ok(())
    }

    /// The configured grid over the configured parameters.
    pub fn sweep_grid(&self) -> Option<SweepGrid> {
        self.grid.clone().map(|spec| SweepGrid::new(self.params, spec))
    }
}
