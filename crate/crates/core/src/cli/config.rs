use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::exactmat::Scalar;
use crate::jordan::JordanSpec;
use crate::refcover::Family;

pub const DEFAULT_BUDGET: usize = 300;

/// Matricizations are `n² × n²`; beyond this sweeps stop being interactive.
pub const MAX_SWEEP_N: usize = 8;

fn default_budget() -> usize {
    DEFAULT_BUDGET
}

/// Input of the `defect` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub family: Family,
    pub a: JordanSpec,
    pub b: JordanSpec,
    pub k: Vec<usize>,
    #[serde(default)]
    pub with_primal: bool,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Falls back to `REFDEFECT_SEED`, then 0.
    #[serde(default)]
    pub seed: Option<u64>,
}

impl CaseConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.a
            .validate()
            .map_err(|e| CliError::Usage(format!("spec a: {e}")))?;
        self.b
            .validate()
            .map_err(|e| CliError::Usage(format!("spec b: {e}")))?;
        if self.a.n() != self.b.n() {
            return Err(CliError::Usage(format!(
                "specs have different sizes ({} vs {})",
                self.a.n(),
                self.b.n()
            )));
        }
        if self.k.is_empty() || self.k.contains(&0) {
            return Err(CliError::Usage(
                "k must be a nonempty list of positive integers".into(),
            ));
        }
        if self.budget == 0 {
            return Err(CliError::Usage("budget must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: CaseConfig =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("case config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        CaseConfig::from_json(&read(path)?)
    }
}

/// Input of the `sweep` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_max: usize,
    pub eigen_pool: Vec<String>,
    pub families: Vec<Family>,
    pub k_max: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Worker threads; the `--jobs` flag overrides it.
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default)]
    pub with_primal: bool,
    #[serde(default = "default_budget")]
    pub budget: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_max == 0 || self.n_max > MAX_SWEEP_N {
            return Err(CliError::Usage(format!(
                "n_max must be in 1..={MAX_SWEEP_N}, got {}",
                self.n_max
            )));
        }
        if self.k_max == 0 {
            return Err(CliError::Usage("k_max must be positive".into()));
        }
        if self.families.is_empty() {
            return Err(CliError::Usage("families must not be empty".into()));
        }
        if self.budget == 0 {
            return Err(CliError::Usage("budget must be positive".into()));
        }
        self.pool()?;
        Ok(())
    }

    /// Parsed, sorted and deduplicated eigenvalue pool.
    pub fn pool(&self) -> Result<Vec<Scalar>, CliError> {
        if self.eigen_pool.is_empty() {
            return Err(CliError::Usage("eigen_pool must not be empty".into()));
        }
        let mut pool = self
            .eigen_pool
            .iter()
            .map(|t| {
                t.parse::<Scalar>()
                    .map_err(|e| CliError::Usage(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        pool.sort();
        pool.dedup();
        Ok(pool)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: SweepConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("sweep config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        SweepConfig::from_json(&read(path)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}
