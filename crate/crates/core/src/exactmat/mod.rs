//! Exact scalar and dense matrix arithmetic over the Gaussian rationals.

mod matrix;
mod scalar;

pub use matrix::{Mat, Rref};
pub use scalar::Scalar;
