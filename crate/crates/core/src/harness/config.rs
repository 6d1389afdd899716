use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable capping the worker count of sweeps and replays.
pub const THREADS_ENV: &str = "POLYA_VERIFY_THREADS";

/// Run parameters; every field can be overridden from a flat `key = value`
/// TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub na: usize,
    pub nb: usize,
    pub b_min: f64,
    pub b_max: f64,
    /// Finest FEM level of sweep rows.
    pub level: u32,
    /// Finest FEM level of oracle checks inside case replays.
    pub replay_level: u32,
    pub upper_samples: usize,
    pub tangential_samples: usize,
    pub seed: u64,
    /// Series truncation for rectangle checks.
    pub terms: usize,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            na: 60,
            nb: 60,
            b_min: 0.02,
            b_max: 3f64.sqrt() / 2.0,
            level: 7,
            replay_level: 5,
            upper_samples: 500,
            tangential_samples: 40,
            seed: 0x5eed,
            terms: 64,
            threads: None,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Worker count: the smaller of the configured value and the
    /// environment cap, defaulting to rayon's choice.
    pub fn worker_count(&self) -> Option<usize> {
        let env = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
        match (self.threads, env) {
            (Some(a), Some(b)) => Some(a.min(b).max(1)),
            (Some(n), None) | (None, Some(n)) => Some(n.max(1)),
            (None, None) => None,
        }
    }

    pub fn thread_pool(&self) -> Result<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.worker_count() {
            b = b.num_threads(n);
        }
        b.build().map_err(|e| Error::DomainError(e.to_string()))
    }
}
