use std::fmt::Write as _;
use std::path::Path;

use super::{CaseConfig, CliError, CommandOutcome};
use crate::refcover::{rd_k_reports, PrimalOptions};

/// Compute the defect report for every requested `k`. Writes the reports
/// as a JSON array to `out` when given.
pub fn cmd_defect(
    cfg: &CaseConfig,
    out: Option<&Path>,
    fallback_seed: u64,
) -> Result<CommandOutcome, CliError> {
    cfg.validate()?;
    let seed = cfg.seed.unwrap_or(fallback_seed);
    let primal = cfg
        .with_primal
        .then_some(PrimalOptions { budget: cfg.budget });
    let reports = rd_k_reports(0, cfg.family, &cfg.a, &cfg.b, &cfg.k, primal, seed)
        .map_err(|e| CliError::Math(e.to_string()))?;

    let mut text = String::new();
    let family = serde_json::to_value(cfg.family).expect("family serializes");
    writeln!(
        text,
        "family {}  A = {}  B = {}  seed {seed}",
        family.as_str().unwrap_or("?"),
        cfg.a,
        cfg.b
    )
    .unwrap();
    writeln!(
        text,
        "{:>3} {:>9} {:>8} {:>10} {:>8} {:>7} {:>6}",
        "k", "dim_image", "dim_refk", "rd_formula", "rd_exact", "primal", "agree"
    )
    .unwrap();
    for r in &reports {
        let primal = r
            .primal_dim
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        writeln!(
            text,
            "{:>3} {:>9} {:>8} {:>10} {:>8} {:>7} {:>6}",
            r.k, r.dim_image, r.dim_refk, r.rd_formula, r.rd_exact, primal, r.agree
        )
        .unwrap();
    }
    if let Some(path) = out {
        let json =
            serde_json::to_string_pretty(&reports).map_err(|e| CliError::Math(e.to_string()))?;
        std::fs::write(path, json)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let ok = reports.iter().all(|r| r.agree && r.primal_consistent());
    Ok(CommandOutcome::new(ok, text))
}
