//! Dense matrices over the rationals.
//!
//! Small, exact, and deliberately naive: the matrices in this crate are
//! tiny (ambient ranks rarely exceed single digits), so plain Gaussian
//! elimination over `BigRational` beats anything clever.

use num_traits::{One, Zero};

use super::Rat;
use crate::{Error, Result};

/// A dense rational matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from rows.
    ///
    /// # Errors
    ///
    /// Fails when the rows have unequal lengths or there are none.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::ShapeMismatch("matrix must be nonempty".into()));
        }
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "ragged rows: {} vs {}",
                    ncols,
                    r.len()
                )));
            }
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer rows; test and example convenience.
    ///
    /// # Errors
    ///
    /// Same conditions as [`RatMatrix::from_rows`].
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rat_int(x)).collect())
                .collect(),
        )
    }

    /// Diagonal matrix from its diagonal entries.
    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise sum.
    ///
    /// # Errors
    ///
    /// Fails on shape mismatch.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise difference.
    ///
    /// # Errors
    ///
    /// Fails on shape mismatch.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Matrix product.
    ///
    /// # Errors
    ///
    /// Fails when the inner dimensions disagree.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    ///
    /// # Errors
    ///
    /// Fails when the vector length differs from the column count.
    pub fn matvec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// The quadratic form `v^t M v`.
    ///
    /// # Errors
    ///
    /// Fails on a non-square matrix or mismatched vector length.
    pub fn quadratic_form(&self, v: &[Rat]) -> Result<Rat> {
        let mv = self.matvec(v)?;
        super::dot(v, &mv)
    }

    /// Trace of a square matrix.
    ///
    /// # Errors
    ///
    /// Fails on a non-square matrix.
    pub fn trace(&self) -> Result<Rat> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    /// Verify symmetry, reporting the first offending entry.
    ///
    /// # Errors
    ///
    /// Fails with the offending position when the matrix is not symmetric.
    pub fn check_symmetric(&self) -> Result<()> {
        self.require_square()?;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Exact determinant by Gaussian elimination.
    ///
    /// # Errors
    ///
    /// Fails on a non-square matrix.
    pub fn det(&self) -> Result<Rat> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(pivot) = pivot else {
                return Ok(Rat::zero());
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det *= &p;
            for r in (col + 1)..n {
                let f = m.get(r, col) / &p;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &f * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse.
    ///
    /// # Errors
    ///
    /// Fails on a non-square or singular matrix.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            m.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = m.get(col, col).clone();
            m.scale_row(col, &p.recip());
            inv.scale_row(col, &p.recip());
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                m.sub_scaled_row(r, col, &f);
                inv.sub_scaled_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    /// Solve `self * x = b` for square nonsingular `self`.
    ///
    /// # Errors
    ///
    /// Fails on shape mismatch or a singular matrix.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        self.inverse()?.matvec(b)
    }

    /// Reduced row echelon form with the pivot column list.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let pv = m.get(row, col).clone();
            m.scale_row(row, &pv.recip());
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if !f.is_zero() {
                    m.sub_scaled_row(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = self.get(r, j) * f;
            self.set(r, j, v);
        }
    }

    fn sub_scaled_row(&mut self, r: usize, src: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = self.get(r, j) - f * self.get(src, j);
            self.set(r, j, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn basic_algebra() {
        let a = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let b = RatMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab, RatMatrix::from_int_rows(&[&[2, 1], &[4, 3]]).unwrap());
        assert_eq!(a.add(&b).unwrap().get(0, 1), &rat(3, 1));
        assert_eq!(a.transpose().get(0, 1), &rat(3, 1));
        assert_eq!(a.trace().unwrap(), rat(5, 1));
        assert!(a.matmul(&RatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let a = RatMatrix::from_int_rows(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(a.det().unwrap(), rat(1, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), RatMatrix::identity(2));
        let sing = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(sing.det().unwrap(), rat(0, 1));
        assert!(matches!(sing.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn solve_linear_system() {
        let a = RatMatrix::from_int_rows(&[&[1, 1], &[1, -1]]).unwrap();
        let x = a.solve(&[rat(3, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn kernel_and_rank() {
        let a = RatMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            let image = a.matvec(v).unwrap();
            assert!(image.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn symmetry_check_reports_position() {
        let mut m = RatMatrix::identity(3);
        m.set(0, 2, rat(5, 1));
        match m.check_symmetric() {
            Err(Error::NotSymmetric { row: 0, col: 2 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn quadratic_form_values() {
        let m = RatMatrix::from_int_rows(&[&[2, 1], &[1, 3]]).unwrap();
        let q = m.quadratic_form(&[rat(1, 1), rat(-1, 1)]).unwrap();
        assert_eq!(q, rat(3, 1));
    }
}
