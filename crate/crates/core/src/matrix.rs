//! Small dense matrices over a field, row-major.

use std::fmt;
use std::ops::{Add, Mul};

use crate::scalar::Coefficient;

#[derive(Clone, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coefficient> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = C::one();
        }
        m
    }

    /// `None` if the rows are ragged. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &C) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// `self += c * other`. Panics on shape mismatch.
    pub fn add_scaled(&mut self, c: &C, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x = x.clone() + c.clone() * y.clone();
        }
    }

    /// Panics unless `self.cols == rhs.rows`.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] =
                        out.data[idx].clone() + a.clone() * rhs.data[k * rhs.cols + j].clone();
                }
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for &Matrix<C> {
    type Output = Matrix<C>;
    fn mul(self, rhs: &Matrix<C>) -> Matrix<C> {
        self.matmul(rhs)
    }
}

impl<C: Coefficient> Add for &Matrix<C> {
    type Output = Matrix<C>;
    fn add(self, rhs: &Matrix<C>) -> Matrix<C> {
        let mut out = self.clone();
        out.add_scaled(&C::one(), rhs);
        out
    }
}

impl<C: fmt::Debug> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[C]> = (0..self.rows)
            .map(|r| &self.data[r * self.cols..(r + 1) * self.cols])
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::rat;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn products() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(&a * &b, Matrix::identity(2));
        let ba = &b * &a;
        assert_eq!(ba, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
        assert_eq!(&ba * &ba, ba);
        assert_eq!(&(&a * &b) * &a, a);
    }

    #[test]
    fn add_and_scale() {
        let i = Matrix::<Rational>::identity(2);
        let mut z = i.clone();
        z.add_scaled(&rat(-1), &i);
        assert!(z.is_zero());
        assert_eq!(&i + &i, i.scale(&rat(2)));
        assert!(Matrix::<Rational>::from_rows(vec![vec![rat(1)], vec![]]).is_none());
    }
}
