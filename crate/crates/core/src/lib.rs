//! Exact k-reflexive covers and k-reflexivity defects for images of
//! generalized derivations `T ↦ AT − TB` and of `T ↦ ATB − T`.
//!
//! Everything is computed over the Gaussian rationals ℚ(i), so every
//! dimension count is certified. The closed-form defect sums in
//! [`formulas`] are checked against two computational routes in
//! [`refcover`]: an exact pipeline through the trace-pairing dual and a
//! seeded primal oracle that only ever over-approximates.

pub mod cli;
pub mod elemop;
mod error;
pub mod exactmat;
pub mod formulas;
pub mod jordan;
pub mod refcover;
pub mod rng;
pub mod subspace;

pub use elemop::ElementaryOperator;
pub use error::{Error, Result};
pub use exactmat::{Mat, Scalar};
pub use formulas::DefectTermKind;
pub use jordan::{JordanBlock, JordanSpec};
pub use refcover::{DefectReport, Family};
pub use subspace::Subspace;
