use std::path::PathBuf;

use clap::ValueEnum;

pub const CACHE_ENV: &str = "FUSION_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Bounds, sampling and output settings shared by every suite.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_n: usize,
    pub max_entry: u32,
    pub samples: usize,
    pub seed: u64,
    /// Restricts the geometric suites to one n.
    pub n: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_n: 4,
            max_entry: 5,
            samples: 20,
            seed: 0,
            n: None,
            cache_dir: None,
            format: Format::Table,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_n == 0 || self.max_entry == 0 || self.samples == 0 {
            return Err("--max-n, --max-entry and --samples must be positive".into());
        }
        if self.n == Some(0) {
            return Err("--n must be positive".into());
        }
        Ok(())
    }
}
