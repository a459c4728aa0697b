use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LatticeError;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LatticeError> {
        if data.len() != rows * cols {
            return Err(LatticeError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LatticeError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds an `n`-row matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        let mut m = Self::zeros(n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    got: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.rows != other.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vcat(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.cols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> IntMatrix {
        let mut out = Self::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                out.set(i, j - start, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(&[[2, -1, 0], [1, 3, 4], [0, 5, -2]]).unwrap();
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = -52 - 2 = -54
        assert_eq!(m.determinant().unwrap(), BigInt::from(-54));
        let z = IntMatrix::from_rows(&[[0, 1], [0, 2]]).unwrap();
        assert!(z.determinant().unwrap().is_zero());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2], vec![3]];
        assert!(IntMatrix::from_rows(&rows).is_err());
    }

    #[test]
    fn product_and_blocks() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]).unwrap();
        let i = IntMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let d = a.block_diag(&i);
        assert_eq!(d.rows(), 4);
        assert_eq!(d.row_block(2, 4).col_block(2, 4), i);
        assert_eq!(a.hcat(&i).unwrap().col_block(0, 2), a);
    }
}
