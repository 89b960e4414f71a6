//! Jordan-structure data: specs, block matrices, Segre characteristics and
//! exact similarity search.
//!
//! Jordan forms are always supplied, never computed from raw matrices.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::elemop::ElementaryOperator;
use crate::error::{Error, Result};
use crate::exactmat::{Mat, Scalar};
use crate::rng;

/// `J_size(eig)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanBlock {
    pub eig: Scalar,
    pub size: usize,
}

impl JordanBlock {
    pub fn new(eig: Scalar, size: usize) -> Self {
        JordanBlock { eig, size }
    }
}

/// Ordered list of Jordan blocks; eigenvalues may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanSpec {
    pub blocks: Vec<JordanBlock>,
}

impl JordanSpec {
    pub fn new(blocks: Vec<JordanBlock>) -> Result<Self> {
        let spec = JordanSpec { blocks };
        spec.validate()?;
        Ok(spec)
    }

    /// Single block `J_size(eig)`.
    pub fn single(eig: Scalar, size: usize) -> Self {
        JordanSpec {
            blocks: vec![JordanBlock::new(eig, size)],
        }
    }

    /// From `(eigenvalue text, size)` pairs, e.g. `[("1/2", 3), ("i", 1)]`.
    pub fn parse(pairs: &[(&str, usize)]) -> Result<Self> {
        let blocks = pairs
            .iter()
            .map(|&(e, s)| Ok(JordanBlock::new(e.parse()?, s)))
            .collect::<Result<Vec<_>>>()?;
        JordanSpec::new(blocks)
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::Invalid("Jordan spec has no blocks".into()));
        }
        if self.blocks.iter().any(|b| b.size == 0) {
            return Err(Error::Invalid("Jordan block of size 0".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn has_zero_eigenvalue(&self) -> bool {
        self.blocks.iter().any(|b| b.eig.is_zero())
    }

    /// Block-diagonal `J_{p_1}(λ_1) ⊕ … ⊕ J_{p_N}(λ_N)`.
    pub fn build(&self) -> Mat {
        let blocks: Vec<Mat> = self
            .blocks
            .iter()
            .map(|b| jordan_block(b.size, &b.eig))
            .collect();
        Mat::direct_sum(&blocks)
    }

    /// Blocks sorted by eigenvalue (ascending, lexicographic on real then
    /// imaginary part), then size descending.
    pub fn canonical(&self) -> JordanSpec {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(|a, b| a.eig.cmp(&b.eig).then(b.size.cmp(&a.size)));
        JordanSpec { blocks }
    }

    /// Largest block size at `eig`, if `eig` occurs.
    pub fn index_of(&self, eig: &Scalar) -> Option<usize> {
        self.blocks
            .iter()
            .filter(|b| &b.eig == eig)
            .map(|b| b.size)
            .max()
    }
}

/// Compact text form `J2(0)+J1(1/2)`.
impl fmt::Display for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "J{}({})", b.size, b.eig)?;
        }
        Ok(())
    }
}

pub fn jordan_block(size: usize, eig: &Scalar) -> Mat {
    Mat::from_fn(size, size, |i, j| {
        if i == j {
            eig.clone()
        } else if i + 1 == j {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// `I, J_n(0), …, J_n(0)^{n−1}`: a basis of the upper triangular Toeplitz
/// algebra, the commutant of `J_n(0)`.
pub fn toeplitz_basis(n: usize) -> Vec<Mat> {
    (0..n)
        .map(|offset| {
            Mat::from_fn(n, n, |i, j| {
                if j == i + offset {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
        })
        .collect()
}

/// Sizes of the Jordan blocks of `m` at `eig`, descending; empty when `eig`
/// is not an eigenvalue. Read from `r_j = rank((m − eig·I)^j)`: the number
/// of blocks of size at least `j` is `r_{j−1} − r_j`.
pub fn segre(m: &Mat, eig: &Scalar) -> Vec<usize> {
    assert!(m.is_square(), "segre of a non-square matrix");
    let n = m.rows();
    let shifted = m - &Mat::identity(n).scale(eig);
    let mut ranks = vec![n];
    let mut power = Mat::identity(n);
    for _ in 0..n {
        power = &power * &shifted;
        let r = power.rank();
        ranks.push(r);
        if r == *ranks.iter().rev().nth(1).expect("two entries") {
            break;
        }
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for (j, &count) in at_least.iter().enumerate().rev() {
        let longer = at_least.get(j + 1).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(j + 1, count - longer));
    }
    sizes
}

/// Search parameters for [`find_similarity`].
#[derive(Clone, Copy, Debug)]
pub struct SimilaritySearch {
    pub seed: u64,
    pub budget: usize,
    pub coeff_bound: i64,
}

impl Default for SimilaritySearch {
    fn default() -> Self {
        SimilaritySearch {
            seed: 0,
            budget: 64,
            coeff_bound: 3,
        }
    }
}

/// An invertible `X` with `m·X = X·j`, i.e. `X⁻¹·m·X = j`.
///
/// The solution space of `mX − Xj = 0` is computed exactly; the first
/// attempt is the sum of its basis, later attempts are seeded integer
/// combinations with coefficients in `[−coeff_bound, coeff_bound]`.
pub fn find_similarity(m: &Mat, j: &Mat, search: SimilaritySearch) -> Result<Mat> {
    if !m.is_square() || !j.is_square() || m.rows() != j.rows() {
        return Err(Error::Shape(format!(
            "find_similarity needs equal square matrices, got {:?} and {:?}",
            m.shape(),
            j.shape()
        )));
    }
    let n = m.rows();
    let intertwiners = ElementaryOperator::derivation(m, j)?.kernel_subspace();
    if intertwiners.dim() == 0 {
        return Err(Error::NotSimilar(
            "only X = 0 intertwines the two matrices".into(),
        ));
    }
    let basis = intertwiners.basis();
    let mut rng = rng::seeded(search.seed);
    for attempt in 0..search.budget {
        let x = basis.iter().fold(Mat::zeros(n, n), |acc, b| {
            let c = if attempt == 0 {
                1
            } else {
                rng.gen_range(-search.coeff_bound..=search.coeff_bound)
            };
            &acc + &b.scale(&Scalar::from_int(c))
        });
        if !x.det().is_zero() {
            debug_assert_eq!(m * &x, &x * j);
            return Ok(x);
        }
    }
    Err(Error::SimilarityBudgetExhausted {
        attempts: search.budget,
    })
}

/// For every eigenvalue common to both specs, the multiplicity of that root
/// in `gcd(m_A, m_B)`: `min(largest a-block, largest b-block)`.
pub fn gcd_root_multiplicities(a: &JordanSpec, b: &JordanSpec) -> BTreeMap<Scalar, usize> {
    a.blocks
        .iter()
        .filter_map(|blk| {
            let ia = a.index_of(&blk.eig)?;
            let ib = b.index_of(&blk.eig)?;
            Some((blk.eig.clone(), ia.min(ib)))
        })
        .collect()
}
