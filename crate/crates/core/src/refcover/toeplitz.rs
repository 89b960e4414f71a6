use serde::{Deserialize, Serialize};

use crate::exactmat::{Mat, Scalar};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `d × D`: `(0_{d,D−d} | T)`.
    PadLeft,
    /// `D × d`: `T` stacked on `0_{D−d,d}`.
    PadBottom,
}

/// Upper triangular Toeplitz matrices of order `d`, padded by a zero block
/// to a `d × D` or `D × d` rectangle. This is the shape of the kernel of the
/// adjoint of a single Jordan-block derivation with equal eigenvalues.
///
/// Elements are parameterized by `a_1, …, a_d`, where `a_{t+1}` sits on the
/// `t`-th superdiagonal of the Toeplitz part. If `a_1 = … = a_j = 0` and
/// `a_{j+1} ≠ 0` the element has rank `d − j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedToeplitzSpace {
    d: usize,
    big_d: usize,
    orientation: Orientation,
}

impl ShiftedToeplitzSpace {
    pub fn new(d: usize, big_d: usize, orientation: Orientation) -> Self {
        assert!(
            d >= 1 && big_d >= d,
            "need 1 <= d <= D (got d={d}, D={big_d})"
        );
        ShiftedToeplitzSpace {
            d,
            big_d,
            orientation,
        }
    }

    /// The kernel shape for `C ↦ J_r(μ)·C − C·J_p(μ)` on `M_{r,p}`.
    pub fn for_adjoint_kernel(r: usize, p: usize) -> Self {
        if r <= p {
            ShiftedToeplitzSpace::new(r, p, Orientation::PadLeft)
        } else {
            ShiftedToeplitzSpace::new(p, r, Orientation::PadBottom)
        }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn long_side(&self) -> usize {
        self.big_d
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn shape(&self) -> (usize, usize) {
        match self.orientation {
            Orientation::PadLeft => (self.d, self.big_d),
            Orientation::PadBottom => (self.big_d, self.d),
        }
    }

    /// The element with coefficients `a_1, …, a_d`.
    pub fn element(&self, coeffs: &[Scalar]) -> Mat {
        assert_eq!(coeffs.len(), self.d, "need exactly d coefficients");
        let toeplitz = Mat::from_fn(self.d, self.d, |i, j| {
            if j >= i {
                coeffs[j - i].clone()
            } else {
                Scalar::zero()
            }
        });
        let (rows, cols) = self.shape();
        let mut out = Mat::zeros(rows, cols);
        match self.orientation {
            Orientation::PadLeft => out.set_block(0, self.big_d - self.d, &toeplitz),
            Orientation::PadBottom => out.set_block(0, 0, &toeplitz),
        }
        out
    }

    fn diagonal(&self, offset: usize) -> Mat {
        let coeffs: Vec<Scalar> = (0..self.d)
            .map(|t| {
                if t == offset {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        self.element(&coeffs)
    }

    pub fn subspace(&self) -> Subspace {
        self.span_of_offsets(0..self.d)
    }

    /// Span of the elements of rank at most `k`. Those are exactly the
    /// elements with `a_1 = … = a_{d−k} = 0`, which already form a
    /// subspace: the top-right order-`k` Toeplitz corner.
    pub fn low_rank_span(&self, k: usize) -> Subspace {
        assert!(k >= 1, "k must be positive");
        if k >= self.d {
            return self.subspace();
        }
        self.span_of_offsets(self.d - k..self.d)
    }

    fn span_of_offsets(&self, offsets: std::ops::Range<usize>) -> Subspace {
        let (rows, cols) = self.shape();
        let mats: Vec<Mat> = offsets.map(|t| self.diagonal(t)).collect();
        Subspace::span_of(rows, cols, &mats).expect("shapes agree")
    }
}

/// Span of `{X ∈ s : rank X ≤ k}`.
pub fn low_rank_span_toeplitz(s: &ShiftedToeplitzSpace, k: usize) -> Subspace {
    s.low_rank_span(k)
}
