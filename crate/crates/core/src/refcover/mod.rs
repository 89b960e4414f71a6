//! The k-reflexivity engine.
//!
//! * [`toeplitz`]: the structured kernel spaces and their rank-`≤ k` spans.
//! * [`exact`]: exact `Ref_k` of the image for both operator families.
//! * [`primal`]: seeded superset oracle working directly from the
//!   definition, independent of the dual route.
//!
//! [`rd_k_exact`] ties these to the closed forms in [`crate::formulas`].

pub mod exact;
pub mod primal;
pub mod toeplitz;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use exact::{
    ref_k_exact_derivation, ref_k_exact_mult, ref_k_transported, BlockCover, ExactPipeline, Family,
};
pub use primal::{ref_k_primal_superset, ref_k_primal_superset_in_basis};
pub use toeplitz::{low_rank_span_toeplitz, Orientation, ShiftedToeplitzSpace};

use crate::error::{Error, Result};
use crate::formulas::rd_k_formula;
use crate::jordan::JordanSpec;
use crate::rng::derive_seed;

/// Formula, exact pipeline and (optionally) primal oracle for one
/// `(family, a, b, k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub case_id: u64,
    pub family: Family,
    pub a: JordanSpec,
    pub b: JordanSpec,
    pub k: usize,
    pub dim_image: usize,
    pub dim_refk: usize,
    pub rd_formula: usize,
    pub rd_exact: usize,
    /// Dimension of the primal superset, when computed.
    pub primal_dim: Option<usize>,
    pub agree: bool,
    pub elapsed_ms: f64,
}

impl DefectReport {
    /// The primal bound never undercuts the exact cover.
    pub fn primal_consistent(&self) -> bool {
        self.primal_dim.is_none_or(|d| d >= self.dim_refk)
    }
}

/// Primal oracle settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimalOptions {
    pub budget: usize,
}

const SIMILARITY_RETRIES: u64 = 4;

/// Build the exact pipeline, retrying with fresh seeds if a similarity
/// search runs out of budget.
pub fn build_pipeline(
    family: Family,
    a: &JordanSpec,
    b: &JordanSpec,
    seed: u64,
) -> Result<ExactPipeline> {
    let mut last = None;
    for attempt in 0..SIMILARITY_RETRIES {
        match ExactPipeline::new(family, a, b, derive_seed(seed, attempt)) {
            Err(e @ Error::SimilarityBudgetExhausted { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Reports for each `k` in `ks`, sharing one pipeline.
pub fn rd_k_reports(
    case_id: u64,
    family: Family,
    a: &JordanSpec,
    b: &JordanSpec,
    ks: &[usize],
    primal: Option<PrimalOptions>,
    seed: u64,
) -> Result<Vec<DefectReport>> {
    let start = Instant::now();
    let pipeline = build_pipeline(family, a, b, seed)?;
    let setup_ms = start.elapsed().as_secs_f64() * 1e3;
    ks.iter()
        .map(|&k| {
            let t = Instant::now();
            let refk = pipeline.refk(k)?;
            let dim_image = pipeline.image().dim();
            if !pipeline.image().is_subspace_of(&refk) {
                return Err(Error::StructureMismatch(
                    "image not contained in cover".into(),
                ));
            }
            let rd_exact = refk.dim() - dim_image;
            let rd_formula = rd_k_formula(family, a, b, k);
            let primal_dim = primal.map(|opts| {
                let sup = ref_k_primal_superset(
                    pipeline.image(),
                    k,
                    opts.budget,
                    derive_seed(seed ^ 0x5052_494d, k as u64),
                );
                debug_assert!(refk.is_subspace_of(&sup));
                sup.dim()
            });
            Ok(DefectReport {
                case_id,
                family,
                a: a.clone(),
                b: b.clone(),
                k,
                dim_image,
                dim_refk: refk.dim(),
                rd_formula,
                rd_exact,
                primal_dim,
                agree: rd_formula == rd_exact,
                elapsed_ms: setup_ms / ks.len() as f64 + t.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

/// Single-`k` report.
pub fn rd_k_exact(
    family: Family,
    a: &JordanSpec,
    b: &JordanSpec,
    k: usize,
    with_primal: bool,
    budget: usize,
    seed: u64,
) -> Result<DefectReport> {
    let primal = with_primal.then_some(PrimalOptions { budget });
    let mut reports = rd_k_reports(0, family, a, b, &[k], primal, seed)?;
    Ok(reports.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(pairs: &[(&str, usize)]) -> JordanSpec {
        JordanSpec::parse(pairs).unwrap()
    }

    #[test]
    fn report_examples() {
        let z = spec(&[("0", 4)]);
        let r = rd_k_exact(Family::Derivation, &z, &z, 2, false, 300, 0).unwrap();
        assert_eq!((r.rd_formula, r.rd_exact, r.agree), (2, 2, true));
        assert_eq!(r.primal_dim, None);

        let r = rd_k_exact(
            Family::Derivation,
            &spec(&[("1", 2)]),
            &spec(&[("0", 2)]),
            1,
            true,
            50,
            0,
        )
        .unwrap();
        assert_eq!((r.rd_formula, r.rd_exact, r.agree), (0, 0, true));
        assert_eq!(r.primal_dim, Some(4));

        let r = rd_k_exact(
            Family::Mult,
            &spec(&[("i", 2)]),
            &spec(&[("-i", 2)]),
            1,
            true,
            300,
            3,
        )
        .unwrap();
        assert_eq!((r.rd_formula, r.rd_exact, r.agree), (1, 1, true));
        assert!(r.primal_consistent());
    }

    #[test]
    fn report_json_shape() {
        let z = spec(&[("0", 2)]);
        let r = rd_k_exact(Family::Mult, &z, &z, 1, false, 1, 0).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["family"], "mult");
        assert_eq!(v["a"]["blocks"][0]["eig"], "0");
        assert!(v["primal_dim"].is_null());
    }
}
