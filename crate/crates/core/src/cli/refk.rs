use std::fmt::Write as _;
use std::path::Path;

use super::{CliError, CommandOutcome};
use crate::refcover::ref_k_primal_superset;
use crate::subspace::Subspace;

/// Primal superset of `Ref_k` for a user-supplied subspace, printed as
/// dimension plus basis.
pub fn cmd_refk(
    subspace_file: &Path,
    k: usize,
    budget: usize,
    seed: u64,
) -> Result<CommandOutcome, CliError> {
    if k == 0 || budget == 0 {
        return Err(CliError::Usage("k and budget must be positive".into()));
    }
    let text = std::fs::read_to_string(subspace_file)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", subspace_file.display())))?;
    let s: Subspace =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("subspace: {e}")))?;
    Ok(CommandOutcome::new(true, render(&s, k, budget, seed)))
}

pub(crate) fn render(s: &Subspace, k: usize, budget: usize, seed: u64) -> String {
    let sup = ref_k_primal_superset(s, k, budget, seed);
    let (m, n) = s.ambient();
    let mut out = String::new();
    writeln!(
        out,
        "ambient {m}x{n}, dim S = {}, k = {k}, budget = {budget}, seed = {seed}",
        s.dim()
    )
    .unwrap();
    writeln!(
        out,
        "primal superset of Ref_k: dim {} (defect upper bound {})",
        sup.dim(),
        sup.dim() - s.dim()
    )
    .unwrap();
    for (i, x) in sup.basis().iter().enumerate() {
        writeln!(out, "basis[{i}]:").unwrap();
        write!(out, "{x}").unwrap();
    }
    out
}
