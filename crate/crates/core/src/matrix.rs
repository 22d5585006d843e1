//! Small dense matrices over a [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{HeisError, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>, // row-major
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(HeisError::Malformed("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Single nonzero entry `value` at `(row, col)`.
    pub fn elementary(size: usize, row: usize, col: usize, value: S) -> Self {
        let mut m = Self::zeros(size, size);
        m[(row, col)] = value;
        m
    }

    /// Outer product `a bᵀ`.
    pub fn outer(a: &[S], b: &[S]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i].clone() * b[j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| x.clone() * factor.clone())
                .collect(),
        }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Entrywise comparison through [`Scalar::approx_eq`].
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Largest entrywise `|a - b|`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Positions of entries that are not (approximately) zero.
    pub fn support(&self, tol: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].approx_zero(tol) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse. Pivots are chosen by largest magnitude, which is
    /// partial pivoting for floats and merely "some nonzero entry" for exact
    /// scalars.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(HeisError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let size = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(size);
        for col in 0..size {
            let pivot = (col..size)
                .filter(|&r| !a[(r, col)].is_zero())
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .to_f64()
                        .abs()
                        .total_cmp(&a[(r2, col)].to_f64().abs())
                })
                .ok_or(HeisError::Singular)?;
            if !S::EXACT && a[(pivot, col)].to_f64().abs() < 1e-300 {
                return Err(HeisError::Singular);
            }
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..size {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..size {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..size {
                    let da = factor.clone() * a[(col, j)].clone();
                    let di = factor.clone() * inv[(col, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - da;
                    inv[(r, j)] = inv[(r, j)].clone() - di;
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(HeisError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let size = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..size {
            let Some(pivot) = (col..size).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(S::zero());
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            for r in col + 1..size {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() / p.clone();
                for j in col..size {
                    let d = factor.clone() * a[(col, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - d;
                }
            }
        }
        Ok(det)
    }

    /// Row rank by elimination; entries below `tol` count as zero (ignored for
    /// exact scalars).
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !a[(r, col)].approx_zero(tol)) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            let p = a[(rank, col)].clone();
            for r in rank + 1..self.rows {
                let factor = a[(r, col)].clone() / p.clone();
                for j in col..self.cols {
                    let d = factor.clone() * a[(rank, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - d;
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}

impl Matrix<f64> {
    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn expm(&self) -> Self {
        let norm = self.data.iter().map(|x| x.abs()).fold(0.0, f64::max) * self.rows as f64;
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(&(0.5f64).powi(squarings as i32));
        let mut term = Self::identity(self.rows);
        let mut sum = Self::identity(self.rows);
        for k in 1..=20 {
            term = (&term * &scaled).scale(&(1.0 / k as f64));
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }
}

use num_traits::Zero;

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, S: Scalar> Mul<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::<S>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<'a, S: Scalar> Add<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;

    fn add(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;

    fn sub(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;

    fn neg(self) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
