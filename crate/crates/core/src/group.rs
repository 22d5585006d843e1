//! The Heisenberg group `H_{2n+1}`, its Lie algebra and dual, and the
//! `(2n+2)×(2n+2)` matrix model.
//!
//! Group elements are pairs `(v, r)` with product
//! `(v, r)·(w, s) = (v + w, r + s + ½ω(v, w))`. The matrix model is
//!
//! ```text
//!        ⎡ 1   0        0 ⎤              ⎡ 0   0        0 ⎤
//! ρ(v,r)=⎢ v   I        0 ⎥  ρ'(x,ξ) =   ⎢ x   0        0 ⎥
//!        ⎣ r   ½ω♯(v)   1 ⎦              ⎣ ξ   ½ω♯(x)   0 ⎦
//! ```

use crate::error::{HeisError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::symplectic::{omega, sharp, ExtendedForm, SympCovector, SympVector};

/// Entrywise tolerance for membership predicates on float matrices.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HeisGroupElement<S> {
    pub v: SympVector<S>,
    pub r: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeisAlgElement<S> {
    pub x: SympVector<S>,
    pub xi: S,
}

/// `f(x, ξ) = λ(x) + μ ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisDualElement<S> {
    pub lambda: SympCovector<S>,
    pub mu: S,
}

impl<S: Scalar> HeisGroupElement<S> {
    pub fn new(v: SympVector<S>, r: S) -> Self {
        Self { v, r }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(SympVector::zeros(n), S::zero())
    }

    pub fn central(n: usize, t: S) -> Self {
        Self::new(SympVector::zeros(n), t)
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    pub fn inverse(&self) -> Self {
        Self::new(-&self.v, -self.r.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let w = omega(&self.v, &other.v)?;
        Ok(Self::new(
            &self.v + &other.v,
            self.r.clone() + other.r.clone() + S::half() * w,
        ))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.v.approx_eq(&other.v, tol) && self.r.approx_eq(&other.r, tol)
    }
}

pub fn mul<S: Scalar>(
    g1: &HeisGroupElement<S>,
    g2: &HeisGroupElement<S>,
) -> Result<HeisGroupElement<S>> {
    g1.mul(g2)
}

impl<S: Scalar> HeisAlgElement<S> {
    pub fn new(x: SympVector<S>, xi: S) -> Self {
        Self { x, xi }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(SympVector::zeros(n), S::zero())
    }

    pub fn central(n: usize, s: S) -> Self {
        Self::new(SympVector::zeros(n), s)
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.xi.is_zero()
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(self.x.scale(factor), self.xi.clone() * factor.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.x.checked_add(&other.x)?,
            self.xi.clone() + other.xi.clone(),
        ))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.x.approx_eq(&other.x, tol) && self.xi.approx_eq(&other.xi, tol)
    }
}

impl<S: Scalar> HeisDualElement<S> {
    pub fn new(lambda: SympCovector<S>, mu: S) -> Self {
        Self { lambda, mu }
    }

    /// `h_μ : (x, ξ) ↦ μ ξ`.
    pub fn h_mu(n: usize, mu: S) -> Self {
        Self::new(SympCovector::zeros(n), mu)
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn eval(&self, a: &HeisAlgElement<S>) -> Result<S> {
        Ok(self.lambda.eval(&a.x)? + self.mu.clone() * a.xi.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(self.lambda.scale(factor), self.mu.clone() * factor.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.lambda.checked_add(&other.lambda)?,
            self.mu.clone() + other.mu.clone(),
        ))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.lambda.approx_eq(&other.lambda, tol) && self.mu.approx_eq(&other.mu, tol)
    }
}

/// `[(x, ξ), (y, η)] = (0, ω(x, y))`.
pub fn bracket<S: Scalar>(
    a: &HeisAlgElement<S>,
    b: &HeisAlgElement<S>,
) -> Result<HeisAlgElement<S>> {
    Ok(HeisAlgElement::central(a.n(), omega(&a.x, &b.x)?))
}

/// The exponential map is the identity on coordinates.
pub fn exp_alg<S: Scalar>(a: &HeisAlgElement<S>) -> HeisGroupElement<S> {
    HeisGroupElement::new(a.x.clone(), a.xi.clone())
}

/// `Ad_g (y, η) = (y, η + ω(g.v, y))`.
pub fn ad<S: Scalar>(g: &HeisGroupElement<S>, a: &HeisAlgElement<S>) -> Result<HeisAlgElement<S>> {
    let shift = omega(&g.v, &a.x)?;
    Ok(HeisAlgElement::new(a.x.clone(), a.xi.clone() + shift))
}

/// `g • f = Ad*_{g⁻¹} f = (λ − μ ω♯(g.v), μ)`.
pub fn coadjoint<S: Scalar>(
    g: &HeisGroupElement<S>,
    f: &HeisDualElement<S>,
) -> Result<HeisDualElement<S>> {
    if g.n() != f.n() {
        return Err(HeisError::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    let shift = sharp(&g.v).scale(&f.mu);
    Ok(HeisDualElement::new(&f.lambda - &shift, f.mu.clone()))
}

fn half_sharp_row<S: Scalar>(v: &SympVector<S>) -> Vec<S> {
    let half = S::half();
    sharp(v)
        .components()
        .into_iter()
        .map(|c| c * half.clone())
        .collect()
}

pub fn rho<S: Scalar>(g: &HeisGroupElement<S>) -> EmbeddedMatrix<S> {
    let n = g.n();
    let mut m = Matrix::identity(2 * n + 2);
    fill_lower_border(&mut m, &g.v, &g.r);
    EmbeddedMatrix { n, matrix: m }
}

pub fn rho_alg<S: Scalar>(a: &HeisAlgElement<S>) -> EmbeddedMatrix<S> {
    let n = a.n();
    let mut m = Matrix::zeros(2 * n + 2, 2 * n + 2);
    fill_lower_border(&mut m, &a.x, &a.xi);
    EmbeddedMatrix { n, matrix: m }
}

fn fill_lower_border<S: Scalar>(m: &mut Matrix<S>, v: &SympVector<S>, corner: &S) {
    let last = m.rows() - 1;
    for (i, c) in v.components().into_iter().enumerate() {
        m[(i + 1, 0)] = c;
    }
    for (j, c) in half_sharp_row(v).into_iter().enumerate() {
        m[(last, j + 1)] = c;
    }
    m[(last, 0)] = corner.clone();
}

/// Parameters `(ζ, d, ξ)` of an element of `ĝ`:
/// `[[ζ, 0, 0], [d, 0, 0], [ξ, (Jd)ᵀ, −ζ]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GhatParams<S> {
    pub zeta: S,
    pub d: SympVector<S>,
    pub xi: S,
}

/// Parameters `(a, d, f)` of an element of `Ĝ`:
/// `[[a, 0, 0], [d, I, 0], [f, a⁻¹(Jd)ᵀ, a⁻¹]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GhatGroupParams<S> {
    pub a: S,
    pub d: SympVector<S>,
    pub f: S,
}

/// A `(2n+2)×(2n+2)` matrix on `V` with membership predicates for the
/// subalgebras and subgroups of `sp(V, 𝒥)` / `Sp(V, 𝒥)` used in the orbit
/// classification.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedMatrix<S> {
    pub n: usize,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> EmbeddedMatrix<S> {
    pub fn new(n: usize, matrix: Matrix<S>) -> Result<Self> {
        if n == 0 {
            return Err(HeisError::ZeroDimension);
        }
        if matrix.rows() != 2 * n + 2 || matrix.cols() != 2 * n + 2 {
            return Err(HeisError::Malformed(format!(
                "expected {0}x{0} matrix for n = {n}, got {1}x{2}",
                2 * n + 2,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { n, matrix })
    }

    /// Infers `n` from a square matrix of even size at least 4.
    pub fn from_square(matrix: Matrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(HeisError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let size = matrix.rows();
        if size < 4 || !size.is_multiple_of(2) {
            return Err(HeisError::Malformed(format!(
                "matrix size {size} is not 2n+2 with n >= 1"
            )));
        }
        Self::new((size - 2) / 2, matrix)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            matrix: Matrix::zeros(2 * n + 2, 2 * n + 2),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: Matrix::identity(2 * n + 2),
        }
    }

    pub fn size(&self) -> usize {
        2 * self.n + 2
    }

    fn last(&self) -> usize {
        2 * self.n + 1
    }

    pub fn from_ghat_params(params: &GhatParams<S>) -> Self {
        let n = params.d.n();
        let mut m = Matrix::zeros(2 * n + 2, 2 * n + 2);
        fill_lower_border(&mut m, &params.d, &params.xi);
        m[(0, 0)] = params.zeta.clone();
        m[(2 * n + 1, 2 * n + 1)] = -params.zeta.clone();
        Self { n, matrix: m }
    }

    /// Panics if `params.a` is zero.
    pub fn from_ghat_group_params(params: &GhatGroupParams<S>) -> Self {
        assert!(!params.a.is_zero(), "Ĝ requires a != 0");
        let n = params.d.n();
        let a_inv = S::one() / params.a.clone();
        let mut m = Matrix::identity(2 * n + 2);
        fill_lower_border(&mut m, &params.d, &params.f);
        let last = 2 * n + 1;
        for j in 1..last {
            m[(last, j)] = m[(last, j)].clone() * a_inv.clone();
        }
        m[(0, 0)] = params.a.clone();
        m[(last, last)] = a_inv;
        Self { n, matrix: m }
    }

    fn violation(predicate: &'static str, row: usize, col: usize, detail: &str) -> HeisError {
        HeisError::NotMember {
            predicate,
            detail: format!("entry ({row}, {col}) {detail}"),
        }
    }

    /// Checks the common lower-border shape and returns `(corner_top, d, ξ, corner_bottom)`.
    fn border_shape(
        &self,
        predicate: &'static str,
        middle_identity: bool,
        tol: f64,
    ) -> Result<(S, SympVector<S>, S, S)> {
        let m = &self.matrix;
        let last = self.last();
        for j in 1..=last {
            if !m[(0, j)].approx_zero(tol) {
                return Err(Self::violation(predicate, 0, j, "must vanish (top row)"));
            }
        }
        for i in 1..last {
            for j in 1..=last {
                let expected = if middle_identity && i == j {
                    S::one()
                } else {
                    S::zero()
                };
                if !m[(i, j)].approx_eq(&expected, tol) {
                    return Err(Self::violation(
                        predicate,
                        i,
                        j,
                        if middle_identity {
                            "must match the identity block"
                        } else {
                            "must vanish (middle block)"
                        },
                    ));
                }
            }
        }
        let d = SympVector::from_components(&m.column(0)[1..last])?;
        Ok((
            m[(0, 0)].clone(),
            d,
            m[(last, 0)].clone(),
            m[(last, last)].clone(),
        ))
    }

    fn check_bottom_row(
        &self,
        predicate: &'static str,
        d: &SympVector<S>,
        factor: &S,
        tol: f64,
    ) -> Result<()> {
        let last = self.last();
        for (j, expected) in half_sharp_row(d).into_iter().enumerate() {
            let expected = expected * factor.clone();
            if !self.matrix[(last, j + 1)].approx_eq(&expected, tol) {
                return Err(Self::violation(
                    predicate,
                    last,
                    j + 1,
                    "must equal the (Jd)ᵀ row",
                ));
            }
        }
        Ok(())
    }

    /// Membership in `ĝ`, returning its parameters `(ζ, d, ξ)`.
    pub fn ghat_params(&self, tol: f64) -> Result<GhatParams<S>> {
        const NAME: &str = "ghat";
        let (zeta, d, xi, bottom) = self.border_shape(NAME, false, tol)?;
        if !(zeta.clone() + bottom).approx_zero(tol) {
            return Err(Self::violation(
                NAME,
                self.last(),
                self.last(),
                "must equal minus entry (0, 0)",
            ));
        }
        self.check_bottom_row(NAME, &d, &S::one(), tol)?;
        Ok(GhatParams { zeta, d, xi })
    }

    pub fn in_ghat(&self, tol: f64) -> bool {
        self.ghat_params(tol).is_ok()
    }

    /// Membership in `ĝ_{f_{n+1}}` (`ĝ` with zero diagonal), returning the
    /// corresponding Lie algebra element.
    pub fn ghat_f_element(&self, tol: f64) -> Result<HeisAlgElement<S>> {
        let params = self.ghat_params(tol).map_err(|e| rename(e, "ghat_f"))?;
        if !params.zeta.approx_zero(tol) {
            return Err(Self::violation(
                "ghat_f",
                0,
                0,
                "must vanish (zero diagonal)",
            ));
        }
        Ok(HeisAlgElement::new(params.d, params.xi))
    }

    pub fn in_ghat_f(&self, tol: f64) -> bool {
        self.ghat_f_element(tol).is_ok()
    }

    /// Membership in `Ĝ`, returning `(a, d, f)`.
    pub fn ghat_group_params(&self, tol: f64) -> Result<GhatGroupParams<S>> {
        const NAME: &str = "Ghat";
        let (a, d, f, bottom) = self.border_shape(NAME, true, tol)?;
        if a.approx_zero(tol) {
            return Err(Self::violation(NAME, 0, 0, "must be invertible"));
        }
        let a_inv = S::one() / a.clone();
        if !bottom.approx_eq(&a_inv, tol) {
            return Err(Self::violation(
                NAME,
                self.last(),
                self.last(),
                "must equal the inverse of entry (0, 0)",
            ));
        }
        self.check_bottom_row(NAME, &d, &a_inv, tol)?;
        Ok(GhatGroupParams { a, d, f })
    }

    pub fn in_ghat_group(&self, tol: f64) -> bool {
        self.ghat_group_params(tol).is_ok()
    }

    /// Membership in `Ĝ_{f_{n+1}}` (unipotent part of `Ĝ`), returning the
    /// corresponding group element.
    pub fn ghat_f_group_element(&self, tol: f64) -> Result<HeisGroupElement<S>> {
        let params = self
            .ghat_group_params(tol)
            .map_err(|e| rename(e, "Ghat_f"))?;
        if !params.a.approx_eq(&S::one(), tol) {
            return Err(Self::violation("Ghat_f", 0, 0, "must equal 1"));
        }
        Ok(HeisGroupElement::new(params.d, params.f))
    }

    pub fn in_ghat_f_group(&self, tol: f64) -> bool {
        self.ghat_f_group_element(tol).is_ok()
    }

    pub fn in_sp(&self, tol: f64) -> bool {
        ExtendedForm::<S>::new(self.n)
            .map(|form| form.in_sp(&self.matrix, tol))
            .unwrap_or(false)
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        ExtendedForm::<S>::new(self.n)
            .map(|form| form.is_symplectic(&self.matrix, tol))
            .unwrap_or(false)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            n: self.n,
            matrix: self.matrix.inverse()?,
        })
    }

    /// `P X P⁻¹`.
    pub fn conjugate(&self, x: &Self) -> Result<Self> {
        Ok(self.mul(x).mul(&self.inverse()?))
    }
}

fn rename(err: HeisError, predicate: &'static str) -> HeisError {
    match err {
        HeisError::NotMember { detail, .. } => HeisError::NotMember { predicate, detail },
        other => other,
    }
}
