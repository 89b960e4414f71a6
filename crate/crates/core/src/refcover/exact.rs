//! Exact `Ref_k` for the two operator families.
//!
//! Both coefficient matrices are block diagonal in Jordan form, so the image
//! splits into `p_i × r_j` corner blocks and its cover is assembled
//! blockwise. On each resonant block the cover is the trace annihilator of
//! the span of the rank-`≤ k` part of the annihilator of the image; that
//! annihilator is the kernel of the adjoint operator, which is recognized
//! here as a [`ShiftedToeplitzSpace`] before its low-rank span is used.

use crate::elemop::ElementaryOperator;
use crate::error::{Error, Result};
use crate::exactmat::{Mat, Scalar};
use crate::formulas::DefectTermKind;
use crate::jordan::{find_similarity, jordan_block, JordanSpec, SimilaritySearch};
use crate::subspace::Subspace;

use super::toeplitz::ShiftedToeplitzSpace;

pub type Family = DefectTermKind;

#[derive(Clone, Debug)]
enum CoverShape {
    /// The block image is the whole block space, and so is its cover.
    Full,
    /// The block image is `im(derivation) · right`, where the derivation's
    /// adjoint kernel is `toeplitz`.
    Resonant {
        toeplitz: ShiftedToeplitzSpace,
        right: Option<Mat>,
    },
}

/// One `p × r` block of the image together with what is needed to produce
/// its cover for any `k`.
#[derive(Clone, Debug)]
pub struct BlockCover {
    pub p: usize,
    pub r: usize,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub image: Subspace,
    shape: CoverShape,
}

impl BlockCover {
    pub fn is_resonant(&self) -> bool {
        matches!(self.shape, CoverShape::Resonant { .. })
    }

    pub fn cover(&self, k: usize) -> Subspace {
        match &self.shape {
            CoverShape::Full => Subspace::full(self.p, self.r),
            CoverShape::Resonant { toeplitz, right } => {
                let cover = toeplitz.low_rank_span(k).annihilator();
                match right {
                    Some(w) => cover
                        .transform(&Mat::identity(self.p), w)
                        .expect("block shapes"),
                    None => cover,
                }
            }
        }
    }

    pub fn rd(&self, k: usize) -> usize {
        self.cover(k).dim() - self.image.dim()
    }
}

/// Cover data for the derivation block `T ↦ J_p(λ)T − TJ_r(μ)`.
fn derivation_block(p: usize, lambda: &Scalar, r: usize, mu: &Scalar) -> Result<BlockCover> {
    let op = ElementaryOperator::derivation(&jordan_block(p, lambda), &jordan_block(r, mu))?;
    let image = op.image_subspace();
    let shape = if lambda != mu {
        CoverShape::Full
    } else {
        let toeplitz = ShiftedToeplitzSpace::for_adjoint_kernel(r, p);
        let kernel = op.adjoint().kernel_subspace();
        if kernel != toeplitz.subspace() {
            return Err(Error::StructureMismatch(format!(
                "adjoint kernel of the {p}x{r} block at eigenvalue {lambda} has dimension {}",
                kernel.dim()
            )));
        }
        CoverShape::Resonant {
            toeplitz,
            right: None,
        }
    };
    Ok(BlockCover {
        p,
        r,
        lambda: lambda.clone(),
        mu: mu.clone(),
        image,
        shape,
    })
}

/// Cover data for `T ↦ J_p(λ)·T·J_r(μ) − T`.
///
/// When `λμ = 1` the operator factors as
/// `T ↦ (J_p(λ)T − T·J_r(μ)⁻¹)·J_r(μ)`, and `J_r(μ)⁻¹ = X·J_r(1/μ)·X⁻¹`,
/// so the image is `im(T ↦ J_p(λ)T − TJ_r(1/μ)) · X⁻¹J_r(μ)`; covers move by
/// the same right factor.
fn mult_block(
    p: usize,
    lambda: &Scalar,
    r: usize,
    mu: &Scalar,
    search: SimilaritySearch,
) -> Result<BlockCover> {
    let j_mu = jordan_block(r, mu);
    let op = ElementaryOperator::mult_minus_id(&jordan_block(p, lambda), &j_mu)?;
    let image = op.image_subspace();
    if !DefectTermKind::Mult.resonant(lambda, mu) {
        return Ok(BlockCover {
            p,
            r,
            lambda: lambda.clone(),
            mu: mu.clone(),
            image,
            shape: CoverShape::Full,
        });
    }
    let mu_inv = mu.inv().expect("resonance excludes zero");
    let j_mu_inverse = j_mu.inverse().expect("nonzero eigenvalue");
    let x = find_similarity(&j_mu_inverse, &jordan_block(r, &mu_inv), search)?;
    let right = &x.inverse().expect("similarity is invertible") * &j_mu;

    let reduced = derivation_block(p, lambda, r, &mu_inv)?;
    let CoverShape::Resonant { toeplitz, .. } = reduced.shape else {
        return Err(Error::StructureMismatch(format!(
            "reduced derivation for eigenvalues {lambda}, {mu_inv} is not resonant"
        )));
    };
    let moved = reduced.image.transform(&Mat::identity(p), &right)?;
    if moved != image {
        return Err(Error::StructureMismatch(format!(
            "image of the {p}x{r} block (eigenvalues {lambda}, {mu}) is not the transported derivation image"
        )));
    }
    Ok(BlockCover {
        p,
        r,
        lambda: lambda.clone(),
        mu: mu.clone(),
        image,
        shape: CoverShape::Resonant {
            toeplitz,
            right: Some(right),
        },
    })
}

/// Image of the full operator plus per-block cover data; produces exact
/// `Ref_k` for any `k` without recomputing the image.
#[derive(Clone, Debug)]
pub struct ExactPipeline {
    family: Family,
    a: JordanSpec,
    b: JordanSpec,
    image: Subspace,
    blocks: Vec<Vec<BlockCover>>,
}

impl ExactPipeline {
    /// `a` and `b` may have different sizes; the operator then acts on
    /// `M_{a.n, b.n}`. `seed` only feeds the similarity search of resonant
    /// mult blocks.
    pub fn new(family: Family, a: &JordanSpec, b: &JordanSpec, seed: u64) -> Result<Self> {
        a.validate()?;
        b.validate()?;
        let (ma, mb) = (a.build(), b.build());
        let op = match family {
            Family::Derivation => ElementaryOperator::derivation(&ma, &mb)?,
            Family::Mult => ElementaryOperator::mult_minus_id(&ma, &mb)?,
        };
        let image = op.image_subspace();
        let mut blocks = Vec::with_capacity(a.blocks.len());
        for (i, x) in a.blocks.iter().enumerate() {
            let mut row = Vec::with_capacity(b.blocks.len());
            for (j, y) in b.blocks.iter().enumerate() {
                let block = match family {
                    Family::Derivation => derivation_block(x.size, &x.eig, y.size, &y.eig)?,
                    Family::Mult => {
                        let search = SimilaritySearch {
                            seed: crate::rng::derive_seed(seed, (i * b.blocks.len() + j) as u64),
                            ..SimilaritySearch::default()
                        };
                        mult_block(x.size, &x.eig, y.size, &y.eig, search)?
                    }
                };
                row.push(block);
            }
            blocks.push(row);
        }
        Ok(ExactPipeline {
            family,
            a: a.clone(),
            b: b.clone(),
            image,
            blocks,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn specs(&self) -> (&JordanSpec, &JordanSpec) {
        (&self.a, &self.b)
    }

    pub fn image(&self) -> &Subspace {
        &self.image
    }

    pub fn blocks(&self) -> &[Vec<BlockCover>] {
        &self.blocks
    }

    /// Block images composed back together; equal to [`Self::image`]
    /// whenever the block decomposition is valid.
    pub fn composed_block_image(&self) -> Result<Subspace> {
        let grid: Vec<Vec<Subspace>> = self
            .blocks
            .iter()
            .map(|row| row.iter().map(|blk| blk.image.clone()).collect())
            .collect();
        Subspace::block_compose(&grid, &self.a.sizes(), &self.b.sizes())
    }

    /// Exact `Ref_k(im Δ)`. For `k ≥ min(a.n, b.n)` every matrix has rank at
    /// most `k`, so the image is its own cover.
    pub fn refk(&self, k: usize) -> Result<Subspace> {
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        if k >= self.a.n().min(self.b.n()) {
            return Ok(self.image.clone());
        }
        let grid: Vec<Vec<Subspace>> = self
            .blocks
            .iter()
            .map(|row| row.iter().map(|blk| blk.cover(k)).collect())
            .collect();
        Subspace::block_compose(&grid, &self.a.sizes(), &self.b.sizes())
    }

    /// `dim Ref_k − dim im`.
    pub fn rd(&self, k: usize) -> Result<usize> {
        let refk = self.refk(k)?;
        if !self.image.is_subspace_of(&refk) {
            return Err(Error::StructureMismatch(
                "image is not contained in its cover".into(),
            ));
        }
        Ok(refk.dim() - self.image.dim())
    }

    /// `Σ_{i,j} rd_k(block_ij)`, computed from the block data alone.
    pub fn block_rd_sum(&self, k: usize) -> usize {
        self.blocks.iter().flatten().map(|blk| blk.rd(k)).sum()
    }
}

/// Exact `(Ref_k(im Δ), im Δ)` for `Δ(T) = AT − TB`.
pub fn ref_k_exact_derivation(
    a: &JordanSpec,
    b: &JordanSpec,
    k: usize,
) -> Result<(Subspace, Subspace)> {
    let pipeline = ExactPipeline::new(Family::Derivation, a, b, 0)?;
    Ok((pipeline.refk(k)?, pipeline.image.clone()))
}

/// Exact `(Ref_k(im Δ), im Δ)` for `Δ(T) = ATB − T`.
pub fn ref_k_exact_mult(
    a: &JordanSpec,
    b: &JordanSpec,
    k: usize,
    seed: u64,
) -> Result<(Subspace, Subspace)> {
    let pipeline = ExactPipeline::new(Family::Mult, a, b, seed)?;
    Ok((pipeline.refk(k)?, pipeline.image.clone()))
}

/// `Ref_k` of a transformed space `P·S·Q`, given `Ref_k(S)`.
///
/// Rank is invariant under `X ↦ Q⁻¹XP⁻¹`, so the span of the rank-`≤ k`
/// part of `(PSQ)_⊥ = Q⁻¹·S_⊥·P⁻¹` is `Q⁻¹·(Ref_k S)_⊥·P⁻¹`, and its
/// annihilator is the cover of `PSQ`.
pub fn ref_k_transported(refk: &Subspace, p: &Mat, q: &Mat) -> Result<Subspace> {
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::Invalid("left factor is singular".into()))?;
    let q_inv = q
        .inverse()
        .ok_or_else(|| Error::Invalid("right factor is singular".into()))?;
    Ok(refk.annihilator().transform(&q_inv, &p_inv)?.annihilator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::rd_k_formula;
    use crate::jordan::toeplitz_basis;

    fn spec(pairs: &[(&str, usize)]) -> JordanSpec {
        JordanSpec::parse(pairs).unwrap()
    }

    #[test]
    fn nilpotent_inner_derivation() {
        for n in 3..=5 {
            let z = spec(&[("0", n)]);
            let pipeline = ExactPipeline::new(Family::Derivation, &z, &z, 0).unwrap();
            assert_eq!(pipeline.image().dim(), n * n - n);
            let toeplitz = Subspace::span_of(n, n, &toeplitz_basis(n)).unwrap();
            assert_eq!(pipeline.image().annihilator(), toeplitz);
            for k in 1..n {
                assert_eq!(pipeline.refk(k).unwrap().dim(), n * n - k);
                assert_eq!(pipeline.rd(k).unwrap(), n - k);
            }
            assert_eq!(pipeline.rd(n).unwrap(), 0);
            assert_eq!(pipeline.rd(n + 3).unwrap(), 0);
        }
    }

    #[test]
    fn rectangular_single_block() {
        let a = spec(&[("4", 3)]);
        let b = spec(&[("4", 2)]);
        let (refk, image) = ref_k_exact_derivation(&a, &b, 1).unwrap();
        assert_eq!(image.dim(), 4);
        assert_eq!(refk.dim(), 5);
        assert!(image.is_subspace_of(&refk));
    }

    #[test]
    fn multi_block_derivation() {
        let a = spec(&[("0", 2), ("1", 3)]);
        let b = spec(&[("0", 5)]);
        let pipeline = ExactPipeline::new(Family::Derivation, &a, &b, 0).unwrap();
        assert_eq!(pipeline.rd(1).unwrap(), 1);
        assert_eq!(pipeline.block_rd_sum(1), 1);
        assert_eq!(pipeline.composed_block_image().unwrap(), *pipeline.image());
    }

    #[test]
    fn mult_examples() {
        let z = spec(&[("0", 2)]);
        let pipeline = ExactPipeline::new(Family::Mult, &z, &z, 0).unwrap();
        assert!(pipeline.image().is_full());
        assert_eq!(pipeline.rd(1).unwrap(), 0);

        let a = spec(&[("2", 3)]);
        let b = spec(&[("1/2", 3)]);
        let pipeline = ExactPipeline::new(Family::Mult, &a, &b, 5).unwrap();
        assert_eq!(pipeline.rd(1).unwrap(), 2);
        assert_eq!(pipeline.rd(2).unwrap(), 1);
        assert_eq!(pipeline.rd(3).unwrap(), 0);

        let b = spec(&[("1/3", 3)]);
        let pipeline = ExactPipeline::new(Family::Mult, &a, &b, 5).unwrap();
        for k in 1..=3 {
            assert_eq!(pipeline.rd(k).unwrap(), 0);
        }

        let a = spec(&[("i", 2)]);
        let b = spec(&[("-i", 2)]);
        let (refk, image) = ref_k_exact_mult(&a, &b, 1, 9).unwrap();
        assert_eq!(refk.dim() - image.dim(), 1);
    }

    #[test]
    fn rectangular_mult_resonant() {
        for (p, r) in [(2, 3), (3, 2), (1, 4), (4, 3)] {
            let a = JordanSpec::single(Scalar::from_int(3), p);
            let b = JordanSpec::single(Scalar::ratio(1, 3), r);
            let pipeline = ExactPipeline::new(Family::Mult, &a, &b, 1).unwrap();
            for k in 1..=4 {
                assert_eq!(
                    pipeline.rd(k).unwrap(),
                    rd_k_formula(Family::Mult, &a, &b, k),
                    "p={p} r={r} k={k}"
                );
            }
        }
    }

    #[test]
    fn transported_cover_matches_direct_transform() {
        let z = spec(&[("0", 3)]);
        let (refk, _) = ref_k_exact_derivation(&z, &z, 1).unwrap();
        let p = Mat::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[1, 0, 1]]);
        let q = Mat::from_i64(&[&[2, 0, 1], &[1, 1, 0], &[0, 0, 1]]);
        let direct = refk.transform(&p, &q).unwrap();
        assert_eq!(ref_k_transported(&refk, &p, &q).unwrap(), direct);
        assert!(ref_k_transported(&refk, &Mat::zeros(3, 3), &q).is_err());
    }

    #[test]
    fn k_zero_rejected() {
        let z = spec(&[("0", 2)]);
        let pipeline = ExactPipeline::new(Family::Derivation, &z, &z, 0).unwrap();
        assert!(pipeline.refk(0).is_err());
    }
}
