//! Elementary operators `Δ(T) = Σ_l A_l·T·B_l` on rectangular matrix spaces.
//!
//! Kernels and images are always read off the matricization
//! `Σ_l B_lᵀ ⊗ A_l`, never from case analysis.

use crate::error::{Error, Result};
use crate::exactmat::Mat;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryOperator {
    rows: usize,
    cols: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl ElementaryOperator {
    /// Operator on `M_{rows,cols}` with coefficient lists `left` (each
    /// `rows×rows`) and `right` (each `cols×cols`) of equal nonzero length.
    pub fn new(rows: usize, cols: usize, left: Vec<Mat>, right: Vec<Mat>) -> Result<Self> {
        if left.is_empty() || left.len() != right.len() {
            return Err(Error::Invalid(format!(
                "coefficient lists must be nonempty and of equal length (got {} and {})",
                left.len(),
                right.len()
            )));
        }
        if let Some(a) = left.iter().find(|a| a.shape() != (rows, rows)) {
            return Err(Error::Shape(format!(
                "left coefficient {:?} is not {rows}x{rows}",
                a.shape()
            )));
        }
        if let Some(b) = right.iter().find(|b| b.shape() != (cols, cols)) {
            return Err(Error::Shape(format!(
                "right coefficient {:?} is not {cols}x{cols}",
                b.shape()
            )));
        }
        Ok(ElementaryOperator {
            rows,
            cols,
            left,
            right,
        })
    }

    /// Generalized derivation `T ↦ A·T − T·B` on `M_{p,r}`.
    pub fn derivation(a: &Mat, b: &Mat) -> Result<Self> {
        if !a.is_square() || !b.is_square() {
            return Err(Error::Shape(
                "derivation coefficients must be square".into(),
            ));
        }
        let (p, r) = (a.rows(), b.rows());
        ElementaryOperator::new(
            p,
            r,
            vec![a.clone(), -&Mat::identity(p)],
            vec![Mat::identity(r), b.clone()],
        )
    }

    /// `T ↦ A·T·B − T` on `M_{p,r}`.
    pub fn mult_minus_id(a: &Mat, b: &Mat) -> Result<Self> {
        if !a.is_square() || !b.is_square() {
            return Err(Error::Shape("coefficients must be square".into()));
        }
        let (p, r) = (a.rows(), b.rows());
        ElementaryOperator::new(
            p,
            r,
            vec![a.clone(), -&Mat::identity(p)],
            vec![b.clone(), Mat::identity(r)],
        )
    }

    pub fn domain(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self) -> &[Mat] {
        &self.left
    }

    pub fn right(&self) -> &[Mat] {
        &self.right
    }

    pub fn apply(&self, t: &Mat) -> Result<Mat> {
        if t.shape() != self.domain() {
            return Err(Error::Shape(format!(
                "operator on {}x{} applied to {}x{}",
                self.rows,
                self.cols,
                t.rows(),
                t.cols()
            )));
        }
        let mut out = Mat::zeros(self.rows, self.cols);
        for (a, b) in self.left.iter().zip(&self.right) {
            out = &out + &(&(a * t) * b);
        }
        Ok(out)
    }

    /// `Σ_l B_lᵀ ⊗ A_l`, so that `matricize()·vec(T) = vec(Δ(T))`.
    pub fn matricize(&self) -> Mat {
        let n = self.rows * self.cols;
        self.left
            .iter()
            .zip(&self.right)
            .fold(Mat::zeros(n, n), |acc, (a, b)| {
                &acc + &b.transpose().kron(a)
            })
    }

    pub fn kernel_subspace(&self) -> Subspace {
        let basis: Vec<Mat> = self
            .matricize()
            .kernel_basis()
            .iter()
            .map(|v| Mat::unvec(v, self.rows, self.cols).expect("kernel vector length"))
            .collect();
        Subspace::span_of(self.rows, self.cols, &basis).expect("kernel shapes agree")
    }

    /// Column space of the matricization, read back as matrices.
    pub fn image_subspace(&self) -> Subspace {
        Subspace::from_vec_rows(self.rows, self.cols, &self.matricize().transpose())
    }

    /// `Δ̃(C) = Σ_l B_l·C·A_l` on `M_{cols,rows}`; its kernel is the trace
    /// annihilator of `im Δ`.
    pub fn adjoint(&self) -> ElementaryOperator {
        ElementaryOperator {
            rows: self.cols,
            cols: self.rows,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// `T ↦ A·T − T·B`.
pub fn make_derivation(a: &Mat, b: &Mat) -> Result<ElementaryOperator> {
    ElementaryOperator::derivation(a, b)
}

/// `T ↦ A·T·B − T`.
pub fn make_mult_minus_id(a: &Mat, b: &Mat) -> Result<ElementaryOperator> {
    ElementaryOperator::mult_minus_id(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::Scalar;
    use crate::jordan::{jordan_block, toeplitz_basis};

    fn e(i: usize, j: usize) -> Mat {
        Mat::unit(2, 2, i, j)
    }

    #[test]
    fn apply_examples() {
        let id =
            ElementaryOperator::new(2, 2, vec![Mat::identity(2)], vec![Mat::identity(2)]).unwrap();
        let t = Mat::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(id.apply(&t).unwrap(), t);

        let j = jordan_block(2, &Scalar::zero());
        let der = make_derivation(&j, &j).unwrap();
        assert_eq!(der.apply(&e(1, 0)).unwrap(), &e(0, 0) - &e(1, 1));

        let mult = make_mult_minus_id(&j, &j).unwrap();
        assert_eq!(mult.apply(&e(1, 0)).unwrap(), &e(0, 1) - &e(1, 0));
        assert!(mult.apply(&Mat::zeros(3, 2)).is_err());
    }

    #[test]
    fn matricize_examples() {
        let id =
            ElementaryOperator::new(2, 3, vec![Mat::identity(2)], vec![Mat::identity(3)]).unwrap();
        assert_eq!(id.matricize(), Mat::identity(6));

        let a = Mat::from_i64(&[&[1, 2], &[0, 3]]);
        let b = Mat::from_i64(&[&[0, 1], &[1, 1]]);
        let two_sided = ElementaryOperator::new(2, 2, vec![a.clone()], vec![b.clone()]).unwrap();
        assert_eq!(two_sided.matricize(), b.transpose().kron(&a));

        let der = make_derivation(&a, &b).unwrap();
        let expected = &Mat::identity(2).kron(&a) - &b.transpose().kron(&Mat::identity(2));
        assert_eq!(der.matricize(), expected);
        let m = der.matricize();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&m * &e(i, j).vec(), der.apply(&e(i, j)).unwrap().vec());
            }
        }
    }

    #[test]
    fn kernel_and_image_examples() {
        for n in 1..=5 {
            let j = jordan_block(n, &Scalar::zero());
            let der = make_derivation(&j, &j).unwrap();
            let toeplitz = Subspace::span_of(n, n, &toeplitz_basis(n)).unwrap();
            assert_eq!(der.kernel_subspace(), toeplitz);
            assert_eq!(der.image_subspace().dim(), n * n - n);
        }

        let der = make_derivation(
            &jordan_block(3, &Scalar::from_int(1)),
            &jordan_block(2, &Scalar::from_int(2)),
        )
        .unwrap();
        assert_eq!(der.kernel_subspace().dim(), 0);
        assert!(der.image_subspace().is_full());

        let j = jordan_block(2, &Scalar::zero());
        assert!(make_mult_minus_id(&j, &j)
            .unwrap()
            .image_subspace()
            .is_full());
    }

    #[test]
    fn adjoint_examples() {
        let e11 = e(0, 0);
        let op = ElementaryOperator::new(2, 2, vec![e11.clone()], vec![e11.clone()]).unwrap();
        let ann = op.image_subspace().annihilator();
        let ker = op.adjoint().kernel_subspace();
        assert_eq!(ann, ker);
        assert_eq!(ker.dim(), 3);
        assert_eq!(
            ker,
            Subspace::span_of(2, 2, &[e(0, 1), e(1, 0), e(1, 1)]).unwrap()
        );

        let a = Mat::from_i64(&[&[1, 2], &[0, 3]]);
        let b = Mat::from_i64(&[&[0, 1, 0], &[1, 1, 0], &[0, 0, 2]]);
        let der = make_derivation(&a, &b).unwrap();
        assert_eq!(der.adjoint().adjoint(), der);
        let adj = der.adjoint();
        assert_eq!(adj.domain(), (3, 2));
        assert_eq!(adj.left(), der.right());
        assert_eq!(adj.right(), der.left());
        assert_eq!(der.image_subspace().annihilator(), adj.kernel_subspace());
    }

    #[test]
    fn constructor_examples() {
        let id = Mat::identity(3);
        assert!(make_derivation(&id, &id).unwrap().matricize().is_zero());
        assert!(make_mult_minus_id(&id, &id).unwrap().matricize().is_zero());
        let der = make_derivation(
            &jordan_block(2, &Scalar::one()),
            &jordan_block(2, &Scalar::zero()),
        )
        .unwrap();
        assert_eq!(der.matricize().rank(), 4);
        assert!(ElementaryOperator::new(2, 2, vec![], vec![]).is_err());
        assert!(
            ElementaryOperator::new(2, 2, vec![Mat::identity(3)], vec![Mat::identity(2)]).is_err()
        );
    }

    #[test]
    fn jordan_derivation_image_dimension() {
        // Same eigenvalue on a p×r block: dim im = d(D−1), d = min, D = max.
        let lam = Scalar::ratio(1, 2);
        for p in 1..=4 {
            for r in 1..=4 {
                let der = make_derivation(&jordan_block(p, &lam), &jordan_block(r, &lam)).unwrap();
                let (d, big) = (p.min(r), p.max(r));
                assert_eq!(der.image_subspace().dim(), d * (big - 1), "p={p} r={r}");
            }
        }
    }
}
