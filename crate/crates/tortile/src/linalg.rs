//! Small dense matrices over an exact scalar, with Gaussian inversion.

use crate::scalar::{Scalar, ScalarError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Row-major matrix. Hom-space conventions: a morphism block has
/// `rows = target multiplicity`, `cols = source multiplicity`, and
/// composition `g after f` is the product `g * f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &S) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, MatError> {
        if data.len() != rows * cols {
            return Err(MatError::Dim(format!(
                "expected {}x{}={} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatError> {
        if self.cols != other.rows {
            return Err(MatError::Dim(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::Dim("matrix addition".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Gauss-Jordan inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<Self, MatError> {
        if self.rows != self.cols {
            return Err(MatError::Dim("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(MatError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    b.data.swap(col * n + j, pivot * n + j);
                }
            }
            let lead = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].div(&lead)?;
                b[(col, j)] = b[(col, j)].div(&lead)?;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let va = a[(col, j)].mul(&f);
                    a[(r, j)] = a[(r, j)].sub(&va);
                    let vb = b[(col, j)].mul(&f);
                    b[(r, j)] = b[(r, j)].sub(&vb);
                }
            }
        }
        Ok(b)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.inverse().is_ok()
    }

    pub fn eq_mat(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.eq_scalar(b))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.eq_mat(&Self::identity(self.rows))
    }

    pub fn render(&self) -> String {
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            rows.push(format!("[{}]", row.join(", ")));
        }
        format!("[{}]", rows.join(", "))
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclotomic;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn inverse_round_trips() {
        let m = Mat::from_rows(vec![vec![c(2), c(1)], vec![c(7), c(4)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_detected() {
        let m = Mat::from_rows(vec![vec![c(1), c(2)], vec![c(2), c(4)]]);
        assert_eq!(m.inverse(), Err(MatError::Singular));
        assert!(!m.is_invertible());
    }
}
