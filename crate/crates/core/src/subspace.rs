//! Linear subspaces of matrix spaces `M_{m,n}` with canonical bases.
//!
//! A subspace is stored as the reduced row echelon form of the matrix whose
//! rows are `vec(X)ᵀ` for a spanning set of `X`. That form is unique, so
//! derived equality is subspace equality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{Mat, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    rows: usize,
    cols: usize,
    /// `dim × (rows·cols)`, RREF without zero rows.
    canon: Mat,
}

impl Subspace {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Subspace {
            rows,
            cols,
            canon: Mat::zeros(0, rows * cols),
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Subspace {
            rows,
            cols,
            canon: Mat::identity(rows * cols),
        }
    }

    /// Span of `mats` inside `M_{rows,cols}`.
    pub fn span_of(rows: usize, cols: usize, mats: &[Mat]) -> Result<Self> {
        if let Some(bad) = mats.iter().find(|m| m.shape() != (rows, cols)) {
            return Err(Error::Shape(format!(
                "span_of: {}x{} element in a {rows}x{cols} space",
                bad.rows(),
                bad.cols()
            )));
        }
        let vecs: Vec<Mat> = mats.iter().map(|m| m.vec().transpose()).collect();
        let refs: Vec<&Mat> = vecs.iter().collect();
        Ok(Subspace::from_vec_rows(
            rows,
            cols,
            &Mat::vstack(rows * cols, &refs),
        ))
    }

    /// Span of the rows of `vec_rows`, each read as `vec(X)ᵀ`.
    pub fn from_vec_rows(rows: usize, cols: usize, vec_rows: &Mat) -> Self {
        assert_eq!(vec_rows.cols(), rows * cols, "vectorized width mismatch");
        Subspace {
            rows,
            cols,
            canon: vec_rows.row_space(),
        }
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.canon.rows()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.rows * self.cols
    }

    /// The canonical RREF matrix of vectorized basis rows.
    pub fn canonical(&self) -> &Mat {
        &self.canon
    }

    pub fn basis(&self) -> Vec<Mat> {
        (0..self.dim())
            .map(|r| {
                Mat::unvec_slice(self.canon.row(r), self.rows, self.cols)
                    .expect("row width matches ambient")
            })
            .collect()
    }

    fn check_ambient(&self, other: &Subspace, what: &str) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::Shape(format!(
                "{what}: ambient {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Residual of `v` after eliminating against the canonical rows.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for r in 0..self.dim() {
            let row = self.canon.row(r);
            let pivot = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
            if v[pivot].is_zero() {
                continue;
            }
            let f = v[pivot].clone();
            for (vj, rj) in v.iter_mut().zip(row).skip(pivot) {
                if !rj.is_zero() {
                    *vj -= &(&f * rj);
                }
            }
        }
        v
    }

    pub fn contains(&self, m: &Mat) -> Result<bool> {
        if m.shape() != self.ambient() {
            return Err(Error::Shape(format!(
                "contains: {}x{} matrix vs {}x{} space",
                m.rows(),
                m.cols(),
                self.rows,
                self.cols
            )));
        }
        Ok(self.reduce(m.vec().entries()).iter().all(Scalar::is_zero))
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient()
            && (0..self.dim()).all(|r| other.reduce(self.canon.row(r)).iter().all(Scalar::is_zero))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "sum")?;
        if self.is_full() || other.dim() == 0 {
            return Ok(self.clone());
        }
        if other.is_full() || self.dim() == 0 {
            return Ok(other.clone());
        }
        let stacked = Mat::vstack(self.rows * self.cols, &[&self.canon, &other.canon]);
        Ok(Subspace::from_vec_rows(self.rows, self.cols, &stacked))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "intersect")?;
        if self.is_full() || other.dim() == 0 {
            return Ok(other.clone());
        }
        if other.is_full() || self.dim() == 0 {
            return Ok(self.clone());
        }
        let width = self.rows * self.cols;
        let c1 = complement_rows(&self.canon);
        let c2 = complement_rows(&other.canon);
        let both = Mat::vstack(width, &[&c1, &c2]);
        let back = complement_rows(&both);
        Ok(Subspace::from_vec_rows(self.rows, self.cols, &back))
    }

    /// `S_⊥ = {C ∈ M_{n,m} : tr(CS) = 0 for all S ∈ S}` for `S ⊆ M_{m,n}`.
    ///
    /// `tr(CS) = vec(Cᵀ)·vec(S)`, so `S_⊥` is the transpose of the bilinear
    /// orthogonal complement of the vectorized space.
    pub fn annihilator(&self) -> Subspace {
        let comp = complement_rows(&self.canon);
        let transposed: Vec<Mat> = (0..comp.rows())
            .map(|r| {
                Mat::unvec_slice(comp.row(r), self.rows, self.cols)
                    .expect("width matches")
                    .transpose()
            })
            .collect();
        Subspace::span_of(self.cols, self.rows, &transposed).expect("shapes agree")
    }

    /// `{L·X·R : X ∈ self}`.
    pub fn transform(&self, left: &Mat, right: &Mat) -> Result<Subspace> {
        if left.cols() != self.rows || right.rows() != self.cols {
            return Err(Error::Shape(format!(
                "transform: {}x{} · ({}x{}) · {}x{}",
                left.rows(),
                left.cols(),
                self.rows,
                self.cols,
                right.rows(),
                right.cols()
            )));
        }
        let images: Vec<Mat> = self.basis().iter().map(|x| &(left * x) * right).collect();
        Subspace::span_of(left.rows(), right.cols(), &images)
    }

    pub fn transpose(&self) -> Subspace {
        let t: Vec<Mat> = self.basis().iter().map(Mat::transpose).collect();
        Subspace::span_of(self.cols, self.rows, &t).expect("shapes agree")
    }

    /// Embed each `blocks[i][j] ⊆ M_{row_sizes[i], col_sizes[j]}` into its
    /// corner of `M_{Σrow_sizes, Σcol_sizes}` and take the (direct) sum.
    pub fn block_compose(
        blocks: &[Vec<Subspace>],
        row_sizes: &[usize],
        col_sizes: &[usize],
    ) -> Result<Subspace> {
        if blocks.len() != row_sizes.len() || blocks.iter().any(|r| r.len() != col_sizes.len()) {
            return Err(Error::Shape("block grid does not match size lists".into()));
        }
        let m: usize = row_sizes.iter().sum();
        let n: usize = col_sizes.iter().sum();
        let mut embedded = Vec::new();
        let mut r0 = 0;
        for (i, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (j, block) in row.iter().enumerate() {
                if block.ambient() != (row_sizes[i], col_sizes[j]) {
                    return Err(Error::Shape(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        block.rows, block.cols, row_sizes[i], col_sizes[j]
                    )));
                }
                for x in block.basis() {
                    let mut big = Mat::zeros(m, n);
                    big.set_block(r0, c0, &x);
                    embedded.push(big);
                }
                c0 += col_sizes[j];
            }
            r0 += row_sizes[i];
        }
        Subspace::span_of(m, n, &embedded)
    }

    /// Split into corner compressions. Fails unless `self` equals the
    /// composition of those compressions, which is exactly when the block
    /// decomposition (and hence blockwise additivity of covers) applies.
    pub fn block_decompose(
        &self,
        row_sizes: &[usize],
        col_sizes: &[usize],
    ) -> Result<Vec<Vec<Subspace>>> {
        if row_sizes.iter().sum::<usize>() != self.rows
            || col_sizes.iter().sum::<usize>() != self.cols
        {
            return Err(Error::Shape(format!(
                "block sizes {row_sizes:?} x {col_sizes:?} do not tile {}x{}",
                self.rows, self.cols
            )));
        }
        let basis = self.basis();
        let mut grid = Vec::with_capacity(row_sizes.len());
        let mut r0 = 0;
        for &rs in row_sizes {
            let mut row = Vec::with_capacity(col_sizes.len());
            let mut c0 = 0;
            for &cs in col_sizes {
                let corners: Vec<Mat> = basis.iter().map(|x| x.block(r0, c0, rs, cs)).collect();
                row.push(Subspace::span_of(rs, cs, &corners)?);
                c0 += cs;
            }
            grid.push(row);
            r0 += rs;
        }
        let total: usize = grid.iter().flatten().map(Subspace::dim).sum();
        if total != self.dim() {
            return Err(Error::NotDecomposable(format!(
                "corner compressions span dimension {total}, subspace has dimension {}",
                self.dim()
            )));
        }
        Ok(grid)
    }
}

/// Rows spanning the bilinear orthogonal complement of the row space of `m`.
fn complement_rows(m: &Mat) -> Mat {
    let width = m.cols();
    let kernel = m.kernel_basis();
    let rows: Vec<Mat> = kernel.iter().map(Mat::transpose).collect();
    let refs: Vec<&Mat> = rows.iter().collect();
    Mat::vstack(width, &refs)
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(M_{}x{}, dim {}) {:?}",
            self.rows,
            self.cols,
            self.dim(),
            self.basis()
        )
    }
}

/// JSON report form of a subspace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub rows: usize,
    pub cols: usize,
    pub basis: Vec<Mat>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SubspaceInput {
    Full(SubspaceJson),
    List(Vec<Mat>),
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SubspaceJson {
            rows: self.rows,
            cols: self.cols,
            basis: self.basis(),
        }
        .serialize(serializer)
    }
}

/// Accepts either `{"rows", "cols", "basis"}` or a bare non-empty list of
/// matrices.
impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (rows, cols, basis) = match SubspaceInput::deserialize(deserializer)? {
            SubspaceInput::Full(j) => (j.rows, j.cols, j.basis),
            SubspaceInput::List(list) => {
                let first = list
                    .first()
                    .ok_or_else(|| D::Error::custom("empty matrix list has no ambient shape"))?;
                (first.rows(), first.cols(), list)
            }
        };
        Subspace::span_of(rows, cols, &basis).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::toeplitz_basis;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        Mat::unit(n, n, i, j)
    }

    #[test]
    fn span_examples() {
        let s =
            Subspace::span_of(2, 2, &[e(2, 0, 0), e(2, 0, 0).scale(&Scalar::from_int(2))]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(Subspace::span_of(2, 2, &[]).unwrap().dim(), 0);
        let j2 = Mat::from_i64(&[&[0, 1], &[0, 0]]);
        let t2 = Subspace::span_of(2, 2, &[Mat::identity(2), j2]).unwrap();
        assert_eq!(t2.dim(), 2);
        assert_eq!(t2, Subspace::span_of(2, 2, &toeplitz_basis(2)).unwrap());
        assert!(Subspace::span_of(2, 2, &[Mat::zeros(2, 3)]).is_err());
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::span_of(2, 2, &[e(2, 0, 0)]).unwrap();
        let b = Subspace::span_of(2, 2, &[e(2, 1, 1)]).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 2);

        let t2 = Subspace::span_of(2, 2, &toeplitz_basis(2)).unwrap();
        let e12 = Subspace::span_of(2, 2, &[e(2, 0, 1)]).unwrap();
        assert_eq!(t2.intersect(&e12).unwrap(), e12);

        let t3 = Subspace::span_of(3, 3, &toeplitz_basis(3)).unwrap();
        assert!(!t3.contains(&e(3, 1, 0)).unwrap());
        assert!(t3.contains(&e(3, 0, 2)).unwrap());
        assert!(a.sum(&Subspace::zero(3, 3)).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let ident = Subspace::span_of(2, 2, &[Mat::identity(2)]).unwrap();
        let ann = ident.annihilator();
        assert_eq!(ann.dim(), 3);
        assert!(ann.basis().iter().all(|c| c.trace().is_zero()));

        let e11 = Subspace::span_of(2, 2, &[e(2, 0, 0)]).unwrap();
        let expected = Subspace::span_of(2, 2, &[e(2, 0, 1), e(2, 1, 0), e(2, 1, 1)]).unwrap();
        assert_eq!(e11.annihilator(), expected);

        assert_eq!(Subspace::full(3, 3).annihilator(), Subspace::zero(3, 3));
        assert_eq!(Subspace::zero(2, 3).annihilator(), Subspace::full(3, 2));
    }

    #[test]
    fn rectangular_annihilator_pairs_by_trace() {
        let s = Subspace::span_of(2, 3, &[Mat::from_i64(&[&[1, 0, 2], &[0, 1, 1]])]).unwrap();
        let ann = s.annihilator();
        assert_eq!(ann.ambient(), (3, 2));
        assert_eq!(ann.dim(), 5);
        for c in ann.basis() {
            for x in s.basis() {
                assert!((&c * &x).trace().is_zero());
            }
        }
        assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn block_examples() {
        let t2 = Subspace::span_of(2, 2, &toeplitz_basis(2)).unwrap();
        assert_eq!(
            Subspace::block_compose(&[vec![t2.clone()]], &[2], &[2]).unwrap(),
            t2
        );

        let grid = vec![
            vec![t2.clone(), Subspace::zero(2, 2)],
            vec![Subspace::zero(2, 2), t2.clone()],
        ];
        let big = Subspace::block_compose(&grid, &[2, 2], &[2, 2]).unwrap();
        assert_eq!(big.dim(), 4);
        assert_eq!(big.block_decompose(&[2, 2], &[2, 2]).unwrap(), grid);

        let diag = Subspace::span_of(2, 2, &[Mat::identity(2)]).unwrap();
        match diag.block_decompose(&[1, 1], &[1, 1]) {
            Err(Error::NotDecomposable(msg)) => assert!(msg.contains("dimension 2")),
            other => panic!("expected NotDecomposable, got {other:?}"),
        }
        assert!(diag.block_decompose(&[1], &[2]).is_err());
    }

    #[test]
    fn transform_and_json() {
        let e11 = Subspace::span_of(2, 2, &[e(2, 0, 0)]).unwrap();
        let swap = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        let moved = e11.transform(&swap, &swap).unwrap();
        assert_eq!(moved, Subspace::span_of(2, 2, &[e(2, 1, 1)]).unwrap());

        let json = serde_json::to_string(&e11).unwrap();
        let back: Subspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e11);
        let bare: Subspace =
            serde_json::from_str(r#"[[["1","0"],["0","0"]],[["2","0"],["0","0"]]]"#).unwrap();
        assert_eq!(bare, e11);
        assert!(serde_json::from_str::<Subspace>("[]").is_err());
    }
}
