//! Closed-form defects.
//!
//! Both operator families use a per-block-pair term of the form
//! `min(p, r) − k`; they differ only in the resonance condition, so every
//! evaluation names its [`DefectTermKind`].

use serde::{Deserialize, Serialize};

use crate::exactmat::Scalar;
use crate::jordan::{gcd_root_multiplicities, JordanSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectTermKind {
    /// `T ↦ AT − TB`: resonance is `λ = μ`.
    Derivation,
    /// `T ↦ ATB − T`: resonance is `λ, μ ≠ 0` and `λμ = 1`.
    Mult,
}

impl DefectTermKind {
    pub fn resonant(self, lambda: &Scalar, mu: &Scalar) -> bool {
        match self {
            DefectTermKind::Derivation => lambda == mu,
            DefectTermKind::Mult => !lambda.is_zero() && !mu.is_zero() && (lambda * mu).is_one(),
        }
    }
}

pub fn defect_term(
    kind: DefectTermKind,
    p: usize,
    r: usize,
    lambda: &Scalar,
    mu: &Scalar,
    k: usize,
) -> usize {
    let d = p.min(r);
    if kind.resonant(lambda, mu) && k < d {
        d - k
    } else {
        0
    }
}

/// `Σ_i Σ_j R(i, j, k)` over all block pairs of `a` and `b`.
pub fn rd_k_formula(kind: DefectTermKind, a: &JordanSpec, b: &JordanSpec, k: usize) -> usize {
    a.blocks
        .iter()
        .flat_map(|x| b.blocks.iter().map(move |y| (x, y)))
        .map(|(x, y)| defect_term(kind, x.size, y.size, &x.eig, &y.eig, k))
        .sum()
}

/// Whether `im(T ↦ AT − TB)` is k-reflexive: every common root of the
/// minimal polynomials has multiplicity at most `k` in their gcd.
pub fn is_k_reflexive_image(a: &JordanSpec, b: &JordanSpec, k: usize) -> bool {
    gcd_root_multiplicities(a, b).values().all(|&m| m <= k)
}

/// Smallest `k` with zero defect.
pub fn reflexivity_index(kind: DefectTermKind, a: &JordanSpec, b: &JordanSpec) -> usize {
    a.blocks
        .iter()
        .flat_map(|x| b.blocks.iter().map(move |y| (x, y)))
        .filter(|(x, y)| kind.resonant(&x.eig, &y.eig))
        .map(|(x, y)| x.size.min(y.size))
        .max()
        .unwrap_or(1)
        .max(1)
}
