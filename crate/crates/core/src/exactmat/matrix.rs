use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::Error;

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Matrix unit `E_{ij}` (zero-based indices).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(rows, cols);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Build from integer rows; convenient in tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
    }

    /// Build from rows of scalar text (`"1/2"`, `"i"`, ...).
    pub fn from_text(rows: &[Vec<String>]) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|t| t.parse())
            .collect::<Result<Vec<Scalar>, _>>()?;
        Mat::from_vec(r, c, data)
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }

    /// Column vector.
    pub fn column(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Mat {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn try_add(&self, rhs: &Mat) -> Result<Mat, Error> {
        self.check_same_shape(rhs, "add")?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Mat) -> Result<Mat, Error> {
        self.check_same_shape(rhs, "sub")?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(l, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, rhs: &Mat, what: &str) -> Result<(), Error> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square(), "power of non-square matrix");
        (0..e).fold(Mat::identity(self.rows), |acc, _| &acc * self)
    }

    /// Column-stacking vectorization: `vec(M)[j*rows + i] = M[i][j]`.
    pub fn vec(&self) -> Mat {
        let mut out = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self[(i, j)].clone());
            }
        }
        Mat::column(out)
    }

    /// Inverse of [`Mat::vec`]; accepts any matrix with `rows * cols` entries,
    /// read in row-major order.
    pub fn unvec(v: &Mat, rows: usize, cols: usize) -> Result<Mat, Error> {
        Mat::unvec_slice(v.entries(), rows, cols)
    }

    pub fn unvec_slice(v: &[Scalar], rows: usize, cols: usize) -> Result<Mat, Error> {
        if v.len() != rows * cols {
            return Err(Error::Shape(format!(
                "vector of length {} cannot be reshaped to {rows}x{cols}",
                v.len()
            )));
        }
        Ok(Mat::from_fn(rows, cols, |i, j| v[j * rows + i].clone()))
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        let (p, q) = rhs.shape();
        Mat::from_fn(self.rows * p, self.cols * q, |i, j| {
            let a = &self[(i / p, j / q)];
            if a.is_zero() {
                Scalar::zero()
            } else {
                a * &rhs[(i % p, j % q)]
            }
        })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[Mat]) -> Mat {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Mat::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, parts: &[&Mat]) -> Mat {
        assert!(
            parts.iter().all(|m| m.cols == cols),
            "vstack: column mismatch"
        );
        let data: Vec<Scalar> = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Mat {
            rows: data.len() / cols.max(1),
            cols,
            data,
        }
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry found
    /// scanning down each column, so the output is deterministic.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(r, j)] = &m[(r, j)] * &inv;
                    }
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: r,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF, i.e. a canonical basis of the row space.
    pub fn row_space(&self) -> Mat {
        let Rref { reduced, rank, .. } = self.rref();
        reduced.block(0, 0, rank, self.cols)
    }

    /// Basis of the right null space, one column vector per free column.
    pub fn kernel_basis(&self) -> Vec<Mat> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -&reduced[(r, free)];
                }
                Mat::column(v)
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let t = &f * &m[(c, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Mat::identity(n));
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        if pivot_cols.len() < n || pivot_cols[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

// Operator impls panic on shape mismatch; the try_* variants report it.
impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &'a Mat) -> Mat {
        self.try_add(rhs).unwrap()
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &'a Mat) -> Mat {
        self.try_sub(rhs).unwrap()
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, rhs: &'a Mat) -> Mat {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.to_text();
        let width = text.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &text {
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// JSON form: list of rows, entries in scalar text format.
impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_text().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        Mat::from_text(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn rref_proportional_rows() {
        let r = Mat::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.reduced, Mat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let r = Mat::identity(3).rref();
        assert_eq!(r.reduced, Mat::identity(3));
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_gaussian_entries() {
        // [[i, 1], [1, -i]]: row1 / i = [1, -i]; row2 - row1 = 0.
        let m = Mat::from_vec(2, 2, vec![s("i"), s("1"), s("1"), s("-i")]).unwrap();
        let r = m.rref();
        let expected = Mat::from_vec(2, 2, vec![s("1"), s("-i"), s("0"), s("0")]).unwrap();
        assert_eq!(r.reduced, expected);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(3).kernel_basis().is_empty());
        assert_eq!(Mat::zeros(2, 2).kernel_basis().len(), 2);
        let m = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], Mat::column(vec![s("-2"), s("1")]));
        assert!((&m * &k[0]).is_zero());
    }

    #[test]
    fn vec_convention() {
        let m = Mat::from_i64(&[&[1, 2], &[3, 4]]);
        let v = m.vec();
        assert_eq!(v, Mat::column(vec![s("1"), s("3"), s("2"), s("4")]));
        assert_eq!(Mat::unvec(&v, 2, 2).unwrap(), m);
        assert_eq!(Mat::from_i64(&[&[5]]).vec(), Mat::column(vec![s("5")]));
        assert!(Mat::unvec(&v, 3, 2).is_err());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(Mat::identity(2).kron(&Mat::identity(2)), Mat::identity(4));
        let j = Mat::from_i64(&[&[0, 1], &[0, 0]]);
        let k = j.kron(&Mat::identity(2));
        let mut expected = Mat::zeros(4, 4);
        expected.set_block(0, 2, &Mat::identity(2));
        assert_eq!(k, expected);
    }

    #[test]
    fn kron_vec_identity_fixed() {
        // vec(ATB) = (B^T ⊗ A) vec(T), both sides evaluated directly.
        let a = Mat::from_i64(&[&[1, -2], &[3, 0]]);
        let b = Mat::from_i64(&[&[2, 1], &[-1, 4]]);
        let t = Mat::from_i64(&[&[0, 5], &[7, -3]]);
        let lhs = (&(&a * &t) * &b).vec();
        let rhs = &b.transpose().kron(&a) * &t.vec();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Mat::from_i64(&[&[-39], &[-15], &[30], &[60]]));
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), Scalar::one());
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Mat::from_i64(&[&[1, 2], &[2, 4]]).det(), Scalar::zero());
        let p = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.det(), s("-1"));
    }

    #[test]
    fn shape_errors() {
        let a = Mat::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(a.try_add(&Mat::zeros(3, 2)).is_err());
        assert!(Mat::from_vec(2, 2, vec![Scalar::one()]).is_err());
    }

    #[test]
    fn trace_cyclic() {
        let m = Mat::from_i64(&[&[1, 2, 0], &[0, 1, 3]]);
        let n = Mat::from_i64(&[&[4, 1], &[0, 2], &[5, 1]]);
        assert_eq!((&m * &n).trace(), (&n * &m).trace());
    }
}
