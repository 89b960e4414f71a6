//! Command implementations behind the `refdefect` binary.
//!
//! Every command returns a [`CommandOutcome`] (or a [`CliError`]) whose
//! [`ExitCode`] follows one contract: 0 success or full agreement,
//! 1 a mathematical mismatch or failed suite, 2 a usage or config error.

mod config;
mod defect;
pub mod enumerate;
mod refk;
mod sweep;
pub mod verify;

pub use config::{CaseConfig, SweepConfig, DEFAULT_BUDGET, MAX_SWEEP_N};
pub use defect::cmd_defect;
pub use refk::cmd_refk;
pub use sweep::{cmd_sweep, csv_header, run_sweep, SweepOutput, SweepSummary};
pub use verify::{cmd_verify, VerifyOptions};

use std::fmt;

/// The default eigenvalue pool used by sweeps and verification suites.
pub const DEFAULT_EIGEN_POOL: [&str; 7] = ["0", "1", "2", "1/2", "3", "i", "-i"];

/// Environment variable consulted for the default seed.
pub const SEED_ENV: &str = "REFDEFECT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Mismatch = 1,
    Usage = 2,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; nothing was written.
    Usage(String),
    /// A computation failed or disagreed.
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Math(_) => ExitCode::Mismatch,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// What a command printed, and how the process should exit.
#[derive(Clone, Debug)]
pub struct CommandOutcome {
    pub exit: ExitCode,
    pub stdout: String,
}

impl CommandOutcome {
    fn new(ok: bool, stdout: String) -> Self {
        CommandOutcome {
            exit: if ok {
                ExitCode::Success
            } else {
                ExitCode::Mismatch
            },
            stdout,
        }
    }
}

/// Seed from `REFDEFECT_SEED`, or 0.
pub fn default_seed() -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}
