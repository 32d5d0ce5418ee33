//! Optional TOML configuration. Command-line flags override it.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rankfilt_core::cartan::{Engine, EngineConfig};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Default degree cutoff for the engines.
    pub cutoff: Option<u32>,
    pub engine: Option<Engine>,
    /// Largest `m` for `cube` without `--allow-large`, and for the cubes
    /// run by `report`.
    pub max_cube_m: Option<u32>,
    /// Largest `k` accepted by `report`.
    pub max_k: Option<u32>,
    /// Hard ceiling on any Cartan cutoff.
    pub cutoff_cap: Option<u32>,
    /// Largest graded piece the Cartan engine will reduce.
    pub max_piece_dim: Option<usize>,
    /// Ambient rank up to which `auto` runs both engines and compares them.
    pub cross_check_max_rank: Option<u32>,
    pub cache: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn engine_config(&self) -> EngineConfig {
        let mut config = EngineConfig::default();
        if let Some(cap) = self.cutoff_cap {
            config.cutoff_cap = cap;
        }
        if let Some(dim) = self.max_piece_dim {
            config.cartan.max_piece_dim = dim;
        }
        if let Some(rank) = self.cross_check_max_rank {
            config.cross_check_max_rank = rank;
        }
        config
    }

    pub fn max_cube_m(&self) -> u32 {
        self.max_cube_m.unwrap_or(4)
    }
}
