use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use refdefect::cli::{
    self, CaseConfig, CliError, CommandOutcome, SweepConfig, VerifyOptions, DEFAULT_BUDGET,
    SEED_ENV,
};

#[derive(Parser)]
#[command(
    name = "refdefect",
    version,
    about = "Exact k-reflexivity defects of derivation-type operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Defects of one case for a list of k.
    Defect {
        #[arg(long)]
        config: PathBuf,
        /// JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive sweep over spec pairs.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        md: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Primal superset of a subspace read from JSON.
    Refk {
        #[arg(long)]
        subspace: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
    },
}

fn run(cmd: Command) -> Result<CommandOutcome, CliError> {
    match cmd {
        Command::Defect { config, out } => {
            let cfg = CaseConfig::load(&config)?;
            cli::cmd_defect(&cfg, out.as_deref(), cli::default_seed()?)
        }
        Command::Sweep {
            config,
            csv,
            md,
            jobs,
        } => {
            let cfg = SweepConfig::load(&config)?;
            cli::cmd_sweep(&cfg, &csv, md.as_deref(), jobs, cli::default_seed()?)
        }
        Command::Verify {
            seed,
            suite,
            trials,
        } => cli::cmd_verify(&VerifyOptions {
            seed: seed.unwrap_or(0),
            suite,
            trials,
        }),
        Command::Refk {
            subspace,
            k,
            budget,
            seed,
        } => cli::cmd_refk(&subspace, k, budget, seed.unwrap_or(0)),
    }
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(args.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.exit.code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code().code() as u8)
        }
    }
}
