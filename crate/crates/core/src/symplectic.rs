//! Symplectic linear algebra on `R^{2n}` and on the extended space
//! `V = R × R^{2n} × R`.
//!
//! Coordinates on `R^{2n}` are split as `(x, y)` with basis order
//! `e_1..e_n, f_1..f_n`. The standard form is
//!
//! ```text
//! ω((x, y), (z, w)) = ⟨x, w⟩ − ⟨y, z⟩
//! ```
//!
//! and its matrix `J_{2n} = [[0, −I], [I, 0]]` is read with the pairing
//! `ω(u, v) = vᵀ J_{2n} u`, so that `ω♯(v) = J_{2n} v` as a row of components.
//! On `V` the basis is `e_0, e_1..e_n, f_1..f_n, f_{n+1}` (indices `0..=2n+1`).

use std::ops::{Add, Neg, Sub};

use crate::error::{HeisError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (p, q)| acc + p.clone() * q.clone())
}

fn check_same(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(HeisError::DimensionMismatch { expected, found })
    }
}

/// Element of `R^{2n}` in `(x, y)` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SympVector<S> {
    pub x: Vec<S>,
    pub y: Vec<S>,
}

/// Linear functional on `R^{2n}`: `λ(w) = ⟨λ.x, w.x⟩ + ⟨λ.y, w.y⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SympCovector<S> {
    pub x: Vec<S>,
    pub y: Vec<S>,
}

macro_rules! split_vector_impl {
    ($ty:ident) => {
        impl<S: Scalar> $ty<S> {
            pub fn new(x: Vec<S>, y: Vec<S>) -> Result<Self> {
                if x.is_empty() {
                    return Err(HeisError::ZeroDimension);
                }
                check_same(x.len(), y.len())?;
                Ok(Self { x, y })
            }

            pub fn zeros(n: usize) -> Self {
                Self {
                    x: vec![S::zero(); n],
                    y: vec![S::zero(); n],
                }
            }

            /// Splits `2n` components into `(x, y)`.
            pub fn from_components(components: &[S]) -> Result<Self> {
                if components.len() % 2 != 0 {
                    return Err(HeisError::Malformed(format!(
                        "odd component count {}",
                        components.len()
                    )));
                }
                let n = components.len() / 2;
                Self::new(components[..n].to_vec(), components[n..].to_vec())
            }

            pub fn n(&self) -> usize {
                self.x.len()
            }

            /// Components in basis order: `x` then `y`.
            pub fn components(&self) -> Vec<S> {
                self.x.iter().chain(&self.y).cloned().collect()
            }

            pub fn scale(&self, factor: &S) -> Self {
                Self {
                    x: self.x.iter().map(|a| a.clone() * factor.clone()).collect(),
                    y: self.y.iter().map(|a| a.clone() * factor.clone()).collect(),
                }
            }

            pub fn is_zero(&self) -> bool {
                self.x.iter().chain(&self.y).all(|a| a.is_zero())
            }

            pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
                self.n() == other.n()
                    && self
                        .components()
                        .iter()
                        .zip(other.components().iter())
                        .all(|(a, b)| a.approx_eq(b, tol))
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                if self.n() != other.n() {
                    return f64::INFINITY;
                }
                self.components()
                    .iter()
                    .zip(other.components().iter())
                    .map(|(a, b)| a.abs_diff(b))
                    .fold(0.0, f64::max)
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                check_same(self.n(), other.n())?;
                Ok(Self {
                    x: self
                        .x
                        .iter()
                        .zip(&other.x)
                        .map(|(a, b)| a.clone() + b.clone())
                        .collect(),
                    y: self
                        .y
                        .iter()
                        .zip(&other.y)
                        .map(|(a, b)| a.clone() + b.clone())
                        .collect(),
                })
            }

            pub fn checked_sub(&self, other: &Self) -> Result<Self> {
                self.checked_add(&-other)
            }
        }

        impl<S: Scalar> Neg for &$ty<S> {
            type Output = $ty<S>;

            fn neg(self) -> $ty<S> {
                $ty {
                    x: self.x.iter().map(|a| -a.clone()).collect(),
                    y: self.y.iter().map(|a| -a.clone()).collect(),
                }
            }
        }

        /// Panics on dimension mismatch; use `checked_add` for untrusted input.
        impl<S: Scalar> Add for &$ty<S> {
            type Output = $ty<S>;

            fn add(self, rhs: &$ty<S>) -> $ty<S> {
                self.checked_add(rhs)
                    .expect("dimension mismatch in vector sum")
            }
        }

        impl<S: Scalar> Sub for &$ty<S> {
            type Output = $ty<S>;

            fn sub(self, rhs: &$ty<S>) -> $ty<S> {
                self.checked_sub(rhs)
                    .expect("dimension mismatch in vector difference")
            }
        }
    };
}

split_vector_impl!(SympVector);
split_vector_impl!(SympCovector);

impl<S: Scalar> SympVector<S> {
    /// `e_j` for `j < n`, `f_{j-n}` for `n <= j < 2n`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut c = vec![S::zero(); 2 * n];
        c[j] = S::one();
        Self::from_components(&c).expect("basis index within 2n")
    }
}

impl<S: Scalar> SympCovector<S> {
    pub fn eval(&self, w: &SympVector<S>) -> Result<S> {
        check_same(self.n(), w.n())?;
        Ok(dot(&self.x, &w.x) + dot(&self.y, &w.y))
    }
}

/// `ω(u, v) = ⟨u.x, v.y⟩ − ⟨u.y, v.x⟩` for the standard form.
pub fn omega<S: Scalar>(u: &SympVector<S>, v: &SympVector<S>) -> Result<S> {
    check_same(u.n(), v.n())?;
    Ok(dot(&u.x, &v.y) - dot(&u.y, &v.x))
}

/// `ω♯(v) = ω(v, ·)` for the standard form; components `(−v.y, v.x)`.
pub fn sharp<S: Scalar>(v: &SympVector<S>) -> SympCovector<S> {
    SympCovector {
        x: v.y.iter().map(|a| -a.clone()).collect(),
        y: v.x.clone(),
    }
}

/// Inverse of [`sharp`]: the unique `v` with `ω(v, ·) = λ`.
pub fn flat<S: Scalar>(lambda: &SympCovector<S>) -> SympVector<S> {
    SympVector {
        x: lambda.y.clone(),
        y: lambda.x.iter().map(|a| -a.clone()).collect(),
    }
}

/// A nondegenerate antisymmetric form on `R^{2n}` stored by its matrix `M`,
/// with `ω(u, v) = vᵀ M u`.
#[derive(Debug, Clone, PartialEq)]
pub struct SympForm<S> {
    n: usize,
    matrix: Matrix<S>,
    inverse: Matrix<S>,
}

impl<S: Scalar> SympForm<S> {
    /// The standard form; its matrix is `J_{2n} = [[0, −I], [I, 0]]`.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(HeisError::ZeroDimension);
        }
        let matrix = Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j == i + n {
                -S::one()
            } else if i >= n && j + n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        Self::from_matrix(matrix)
    }

    pub fn from_matrix(matrix: Matrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(HeisError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() == 0 || !matrix.rows().is_multiple_of(2) {
            return Err(HeisError::Malformed(
                "form matrix must be 2n x 2n with n >= 1".into(),
            ));
        }
        if !(&matrix + &matrix.transpose()).is_zero() {
            return Err(HeisError::Malformed(
                "form matrix is not antisymmetric".into(),
            ));
        }
        let inverse = matrix.inverse()?;
        Ok(Self {
            n: matrix.rows() / 2,
            matrix,
            inverse,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn omega(&self, u: &SympVector<S>, v: &SympVector<S>) -> Result<S> {
        check_same(self.n, u.n())?;
        check_same(self.n, v.n())?;
        Ok(dot(&v.components(), &self.matrix.mul_vec(&u.components())))
    }

    pub fn sharp(&self, v: &SympVector<S>) -> Result<SympCovector<S>> {
        check_same(self.n, v.n())?;
        SympCovector::from_components(&self.matrix.mul_vec(&v.components()))
    }

    pub fn flat(&self, lambda: &SympCovector<S>) -> Result<SympVector<S>> {
        check_same(self.n, lambda.n())?;
        SympVector::from_components(&self.inverse.mul_vec(&lambda.components()))
    }
}

/// Vector in `V = R e_0 ⊕ R^{2n} ⊕ R f_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtVector<S> {
    pub e0: S,
    pub mid: SympVector<S>,
    pub top: S,
}

impl<S: Scalar> ExtVector<S> {
    pub fn zeros(n: usize) -> Self {
        Self {
            e0: S::zero(),
            mid: SympVector::zeros(n),
            top: S::zero(),
        }
    }

    pub fn n(&self) -> usize {
        self.mid.n()
    }

    /// The basis vector `f_{n+1}`.
    pub fn f_top(n: usize) -> Self {
        Self {
            top: S::one(),
            ..Self::zeros(n)
        }
    }

    /// The basis vector `e_0`.
    pub fn e_zero(n: usize) -> Self {
        Self {
            e0: S::one(),
            ..Self::zeros(n)
        }
    }

    pub fn components(&self) -> Vec<S> {
        let mut c = Vec::with_capacity(2 * self.n() + 2);
        c.push(self.e0.clone());
        c.extend(self.mid.components());
        c.push(self.top.clone());
        c
    }

    pub fn from_components(components: &[S]) -> Result<Self> {
        let len = components.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(HeisError::Malformed(format!(
                "extended vector needs 2n+2 >= 4 components, got {len}"
            )));
        }
        Ok(Self {
            e0: components[0].clone(),
            mid: SympVector::from_components(&components[1..len - 1])?,
            top: components[len - 1].clone(),
        })
    }
}

/// The form `𝒥` on `V` with block matrix `[[0, 0, 1], [0, J, 0], [−1, 0, 0]]`
/// where `J = ½ J_{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedForm<S> {
    n: usize,
    matrix: Matrix<S>,
    inverse: Matrix<S>,
}

pub fn extended_form<S: Scalar>(n: usize) -> Result<ExtendedForm<S>> {
    ExtendedForm::new(n)
}

impl<S: Scalar> ExtendedForm<S> {
    pub fn new(n: usize) -> Result<Self> {
        let base = SympForm::<S>::standard(n)?;
        let size = 2 * n + 2;
        let half = S::half();
        let mut matrix = Matrix::zeros(size, size);
        matrix[(0, size - 1)] = S::one();
        matrix[(size - 1, 0)] = -S::one();
        for i in 0..2 * n {
            for j in 0..2 * n {
                matrix[(i + 1, j + 1)] = base.matrix()[(i, j)].clone() * half.clone();
            }
        }
        let inverse = matrix.inverse()?;
        Ok(Self { n, matrix, inverse })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n + 2
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// The middle block `J = ½ J_{2n}`.
    pub fn half_block(&self) -> Matrix<S> {
        Matrix::from_fn(2 * self.n, 2 * self.n, |i, j| {
            self.matrix[(i + 1, j + 1)].clone()
        })
    }

    /// `zᵀ 𝒥 w`, i.e. `w*(z)`.
    pub fn pair(&self, z: &[S], w: &[S]) -> S {
        dot(z, &self.matrix.mul_vec(w))
    }

    /// Matrix of the functional `w* = (·)ᵀ 𝒥 w`, as a row of components.
    pub fn dual(&self, w: &[S]) -> Vec<S> {
        self.matrix.mul_vec(w)
    }

    /// `Pᵀ 𝒥 P = 𝒥`.
    pub fn is_symplectic(&self, p: &Matrix<S>, tol: f64) -> bool {
        p.rows() == self.size()
            && p.cols() == self.size()
            && (&(&p.transpose() * &self.matrix) * p).approx_eq(&self.matrix, tol)
    }

    /// `Xᵀ 𝒥 + 𝒥 X = 0`.
    pub fn in_sp(&self, x: &Matrix<S>, tol: f64) -> bool {
        x.rows() == self.size()
            && x.cols() == self.size()
            && (&(&x.transpose() * &self.matrix) + &(&self.matrix * x))
                .approx_eq(&Matrix::zeros(self.size(), self.size()), tol)
    }

    /// `P⁻¹ = 𝒥⁻¹ Pᵀ 𝒥` for symplectic `P`.
    pub fn symplectic_inverse(&self, p: &Matrix<S>) -> Matrix<S> {
        &(&self.inverse * &p.transpose()) * &self.matrix
    }

    /// `𝒥⁻¹ S` is in `sp(V, 𝒥)` for every symmetric `S`.
    pub fn sp_from_symmetric(&self, sym: &Matrix<S>) -> Matrix<S> {
        &self.inverse * sym
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn v(x: &[i64], y: &[i64]) -> SympVector<Rational> {
        SympVector::new(
            x.iter().map(|&a| q(a)).collect(),
            y.iter().map(|&a| q(a)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn omega_basis_pairing() {
        assert_eq!(omega(&v(&[1], &[0]), &v(&[0], &[1])).unwrap(), q(1));
    }

    #[test]
    fn omega_direct_evaluation_n2() {
        let u = v(&[1, 2], &[3, 4]);
        let w = v(&[5, 6], &[7, 8]);
        assert_eq!(omega(&u, &w).unwrap(), q(-16));
        let form = SympForm::standard(2).unwrap();
        assert_eq!(form.omega(&u, &w).unwrap(), q(-16));
        assert_eq!(omega(&u, &u).unwrap(), q(0));
    }

    #[test]
    fn omega_rejects_dimension_mismatch() {
        let err = omega(&v(&[1], &[0]), &v(&[1, 2], &[0, 0])).unwrap_err();
        assert_eq!(
            err,
            HeisError::DimensionMismatch {
                expected: 1,
                found: 2
            }
        );
        let form = SympForm::<Rational>::standard(1).unwrap();
        assert!(form.sharp(&v(&[1, 2], &[0, 0])).is_err());
    }

    #[test]
    fn sharp_and_flat_examples() {
        let lam = sharp(&v(&[1], &[0]));
        assert_eq!(lam.eval(&v(&[7], &[3])).unwrap(), q(3));
        assert!(sharp(&SympVector::<Rational>::zeros(2)).is_zero());
        assert!(flat(&SympCovector::<Rational>::zeros(2)).is_zero());
        let dual_y = SympCovector::new(vec![q(0)], vec![q(1)]).unwrap();
        assert_eq!(flat(&dual_y), v(&[1], &[0]));
        let form = SympForm::standard(1).unwrap();
        assert_eq!(form.flat(&dual_y).unwrap(), v(&[1], &[0]));
        assert_eq!(form.sharp(&v(&[1], &[0])).unwrap(), lam);
    }

    #[test]
    fn standard_matrix_has_unit_determinant() {
        for n in 1..=4 {
            let form = SympForm::<Rational>::standard(n).unwrap();
            let det = form.matrix().determinant().unwrap();
            assert!(det == q(1) || det == q(-1));
        }
    }

    #[test]
    fn from_matrix_rejects_degenerate_or_symmetric() {
        let sym = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert!(SympForm::from_matrix(sym).is_err());
        let zero = Matrix::<Rational>::zeros(2, 2);
        assert!(matches!(
            SympForm::from_matrix(zero),
            Err(HeisError::Singular)
        ));
        assert!(SympForm::<Rational>::standard(0).is_err());
    }

    #[test]
    fn extended_form_block_shape() {
        let form = extended_form::<Rational>(1).unwrap();
        let half = Rational::half();
        let expected = Matrix::from_rows(vec![
            vec![q(0), q(0), q(0), q(1)],
            vec![q(0), q(0), -half.clone(), q(0)],
            vec![q(0), half, q(0), q(0)],
            vec![q(-1), q(0), q(0), q(0)],
        ])
        .unwrap();
        assert_eq!(form.matrix(), &expected);
        assert!((form.matrix() + &form.matrix().transpose()).is_zero());
        assert!(extended_form::<Rational>(0).is_err());
    }

    #[test]
    fn extended_form_square_is_block_diagonal() {
        for n in 1..=3 {
            let form = extended_form::<Rational>(n).unwrap();
            let sq = form.matrix() * form.matrix();
            let block = form.half_block();
            let block_sq = &block * &block;
            let size = 2 * n + 2;
            let expected = Matrix::from_fn(size, size, |i, j| {
                if (i == 0 && j == 0) || (i == size - 1 && j == size - 1) {
                    q(-1)
                } else if (1..size - 1).contains(&i) && (1..size - 1).contains(&j) {
                    block_sq[(i - 1, j - 1)].clone()
                } else {
                    q(0)
                }
            });
            assert_eq!(sq, expected);
            // (½ J_{2n})² = −¼ I
            assert_eq!(
                block_sq,
                Matrix::identity(2 * n).scale(&Rational::from_ratio(-1, 4))
            );
        }
    }
}
