//! Coadjoint orbits of `H_{2n+1}`.
//!
//! Two routes are provided. The matrix route works inside `sp(V, 𝒥)`: the
//! rank-two operators `L_{w,f} = w ⊗ f* + f ⊗ w*`, the normal-form reduction of
//! a tuple `(V, Y, f_{n+1}; 𝒥)` to `ξ E_{2n+1,0}`, and the trace functional
//! `Z ↦ tr(YZ)` restricted to `ĝ_{f_{n+1}}`. The intrinsic route acts directly
//! on `h*` and moves every `f` with `μ = f(0,1) ≠ 0` to `h_μ : (x, ξ) ↦ μξ`.

use crate::error::{HeisError, Result};
use crate::group::{
    bracket, coadjoint, rho_alg, EmbeddedMatrix, GhatParams, HeisAlgElement, HeisDualElement,
    HeisGroupElement, MEMBERSHIP_TOL,
};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::symplectic::{flat, ExtVector, ExtendedForm, SympCovector, SympVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    FixedPoint,
    Generic,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::FixedPoint => "fixed_point",
            OrbitKind::Generic => "generic",
        }
    }
}

fn tol_for<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        MEMBERSHIP_TOL
    }
}

/// Matrix of `L_{w, f_{n+1}}`:
/// `[[w₀, 0, 0], [w̃, 0, 0], [2w_{2n+1}, (Jw̃)ᵀ, −w₀]]`.
pub fn l_operator<S: Scalar>(w: &ExtVector<S>) -> EmbeddedMatrix<S> {
    let two = S::from_i64(2);
    EmbeddedMatrix::from_ghat_params(&GhatParams {
        zeta: w.e0.clone(),
        d: w.mid.clone(),
        xi: two * w.top.clone(),
    })
}

/// `L_{a,b} = a ⊗ b* + b ⊗ a*` with `z*(·) = (·)ᵀ 𝒥 z`, built from outer
/// products.
pub fn l_pair<S: Scalar>(form: &ExtendedForm<S>, a: &[S], b: &[S]) -> Matrix<S> {
    &Matrix::outer(a, &form.dual(b)) + &Matrix::outer(b, &form.dual(a))
}

/// `L_{w, f_{n+1}}` through [`l_pair`].
pub fn l_operator_outer<S: Scalar>(w: &ExtVector<S>) -> Result<EmbeddedMatrix<S>> {
    let n = w.n();
    let form = ExtendedForm::new(n)?;
    let m = l_pair(&form, &w.components(), &ExtVector::f_top(n).components());
    EmbeddedMatrix::new(n, m)
}

/// Inverse of [`l_operator`] on `ĝ`: `w = ζ e₀ + d + ½ξ f_{n+1}`.
pub fn decompose_ghat<S: Scalar>(x: &EmbeddedMatrix<S>) -> Result<ExtVector<S>> {
    let p = x.ghat_params(tol_for::<S>())?;
    Ok(ExtVector {
        e0: p.zeta,
        mid: p.d,
        top: S::half() * p.xi,
    })
}

/// Both sides of an identity between matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixIdentity<S> {
    pub lhs: Matrix<S>,
    pub rhs: Matrix<S>,
}

impl<S: Scalar> MatrixIdentity<S> {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs.approx_eq(&self.rhs, tol)
    }

    pub fn defect(&self) -> f64 {
        self.lhs.max_abs_diff(&self.rhs)
    }
}

/// `P L_{w,f} P⁻¹` against `L_{Pw, Pf}` for symplectic `P`.
pub fn conjugate_l<S: Scalar>(
    p: &EmbeddedMatrix<S>,
    w: &ExtVector<S>,
) -> Result<MatrixIdentity<S>> {
    let n = p.n;
    if w.n() != n {
        return Err(HeisError::DimensionMismatch {
            expected: n,
            found: w.n(),
        });
    }
    let form = ExtendedForm::new(n)?;
    if !form.is_symplectic(&p.matrix, tol_for::<S>()) {
        return Err(HeisError::NotSymplectic);
    }
    let lw = l_operator(w);
    let lhs = &(&p.matrix * &lw.matrix) * &form.symplectic_inverse(&p.matrix);
    let pw = p.matrix.mul_vec(&w.components());
    let pf = p.matrix.mul_vec(&ExtVector::<S>::f_top(n).components());
    let rhs = l_pair(&form, &pw, &pf);
    Ok(MatrixIdentity { lhs, rhs })
}

/// A tuple `(V, Y, f_{n+1}; 𝒥)`; the distinguished vector is always `f_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleRep<S> {
    pub y: EmbeddedMatrix<S>,
}

impl<S: Scalar> TupleRep<S> {
    pub fn new(y: EmbeddedMatrix<S>) -> Self {
        Self { y }
    }

    pub fn from_params(params: &GhatParams<S>) -> Self {
        Self::new(EmbeddedMatrix::from_ghat_params(params))
    }

    pub fn n(&self) -> usize {
        self.y.n
    }
}

/// Normal form of a cotype: `∇₁(0), ξ` plus the zero type `0_{2n}` when
/// `ξ ≠ 0`, the zero type `0_{2n+2}` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CotypeDescriptor<S> {
    pub modulus: S,
    pub height: u8,
    pub zero_type_dim: usize,
}

impl<S: Scalar> CotypeDescriptor<S> {
    pub fn from_modulus(n: usize, modulus: S) -> Self {
        let generic = !modulus.approx_zero(tol_for::<S>());
        Self {
            height: u8::from(generic),
            zero_type_dim: if generic { 2 * n } else { 2 * n + 2 },
            modulus,
        }
    }

    pub fn kind(&self) -> OrbitKind {
        if self.height == 1 {
            OrbitKind::Generic
        } else {
            OrbitKind::FixedPoint
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<S> {
    /// Vector with `Y + L_{w, f_{n+1}}` in normal form.
    pub w: ExtVector<S>,
    pub descriptor: CotypeDescriptor<S>,
    /// `Y + L_{w, f_{n+1}}`.
    pub residual: EmbeddedMatrix<S>,
}

/// Reduces `Y = [[ζ, 0, 0], [d, 0, 0], [ξ, (Jd)ᵀ, −ζ]]` to `ξ E_{2n+1,0}` with
/// `w = −ζ e₀ − d`.
pub fn reduce_tuple<S: Scalar>(tuple: &TupleRep<S>) -> Result<Reduction<S>> {
    let n = tuple.n();
    let params = tuple.y.ghat_params(tol_for::<S>())?;
    let w = ExtVector {
        e0: -params.zeta.clone(),
        mid: -&params.d,
        top: S::zero(),
    };
    let residual = tuple.y.add(&l_operator(&w));
    Ok(Reduction {
        w,
        descriptor: CotypeDescriptor::from_modulus(n, params.xi),
        residual,
    })
}

/// Nilpotency height: the `m` with `Y^{m+1} = 0 ≠ Y^m`, or `None` when `Y` is
/// not nilpotent. The zero matrix has height 0.
pub fn nilpotent_height<S: Scalar>(y: &EmbeddedMatrix<S>, tol: f64) -> Option<usize> {
    let zero = Matrix::zeros(y.size(), y.size());
    let mut power = Matrix::identity(y.size());
    for m in 0..=y.size() {
        let next = &power * &y.matrix;
        if next.approx_eq(&zero, tol) {
            return Some(m);
        }
        power = next;
    }
    None
}

/// `Z ↦ tr(YZ)` on `ĝ_{f_{n+1}} ≅ h`, returned in `(λ, μ)` coordinates by
/// evaluating on the basis `ρ'(e_k, 0)`, `ρ'(0, 1)`.
pub fn restrict_functional<S: Scalar>(y: &EmbeddedMatrix<S>) -> HeisDualElement<S> {
    let n = y.n;
    let pairing = |z: &EmbeddedMatrix<S>| (&y.matrix * &z.matrix).trace();
    let lambda: Vec<S> = (0..2 * n)
        .map(|k| {
            pairing(&rho_alg(&HeisAlgElement::new(
                SympVector::basis(n, k),
                S::zero(),
            )))
        })
        .collect();
    let mu = pairing(&rho_alg(&HeisAlgElement::central(n, S::one())));
    HeisDualElement::new(
        SympCovector::from_components(&lambda).expect("2n components"),
        mu,
    )
}

/// `P (ξ E_{2n+1,0}) P⁻¹` against `ξ E_{2n+1,0}` for `P ∈ Ĝ_{f_{n+1}}`.
pub fn conjugation_invariance_check<S: Scalar>(
    p: &EmbeddedMatrix<S>,
    xi: S,
) -> Result<MatrixIdentity<S>> {
    p.ghat_f_group_element(tol_for::<S>())?;
    let form = ExtendedForm::new(p.n)?;
    let size = p.size();
    let normal = Matrix::elementary(size, size - 1, 0, xi);
    let lhs = &(&p.matrix * &normal) * &form.symplectic_inverse(&p.matrix);
    Ok(MatrixIdentity { lhs, rhs: normal })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitDescriptor<S> {
    pub kind: OrbitKind,
    pub mu: S,
    /// `h_μ` for generic orbits, the input itself for fixed points.
    pub representative: HeisDualElement<S>,
    /// Group element moving the input to `representative`; absent for fixed
    /// points.
    pub normalizer: Option<HeisGroupElement<S>>,
}

/// Orbit of `f` under the coadjoint action. For `μ ≠ 0` the normalizer is
/// `(μ⁻¹ ω♭(λ), 0)`.
pub fn classify_dual<S: Scalar>(f: &HeisDualElement<S>) -> OrbitDescriptor<S> {
    let n = f.n();
    if f.mu.approx_zero(tol_for::<S>()) {
        return OrbitDescriptor {
            kind: OrbitKind::FixedPoint,
            mu: f.mu.clone(),
            representative: f.clone(),
            normalizer: None,
        };
    }
    let inv_mu = S::one() / f.mu.clone();
    OrbitDescriptor {
        kind: OrbitKind::Generic,
        mu: f.mu.clone(),
        representative: HeisDualElement::h_mu(n, f.mu.clone()),
        normalizer: Some(HeisGroupElement::new(
            flat(&f.lambda).scale(&inv_mu),
            S::zero(),
        )),
    }
}

impl<S: Scalar> OrbitDescriptor<S> {
    /// Applies the normalizer to `f` and compares with the representative.
    pub fn verify(&self, f: &HeisDualElement<S>, tol: f64) -> Result<bool> {
        match &self.normalizer {
            Some(g) => Ok(coadjoint(g, f)?.approx_eq(&self.representative, tol)),
            None => Ok(self.representative.approx_eq(f, tol)),
        }
    }
}

/// Orbit symplectic form at `f` on the generators of `a`, `b`:
/// `f([a, b]) = μ ω(a.x, b.x)`.
pub fn orbit_pairing<S: Scalar>(
    f: &HeisDualElement<S>,
    a: &HeisAlgElement<S>,
    b: &HeisAlgElement<S>,
) -> Result<S> {
    f.eval(&bracket(a, b)?)
}

/// Infinitesimal generator `X^c(f) = d/dt|₀ exp(tc) • f = (−μ ω♯(c.x), 0)`.
pub fn orbit_tangent<S: Scalar>(
    f: &HeisDualElement<S>,
    c: &HeisAlgElement<S>,
) -> Result<HeisDualElement<S>> {
    let moved = coadjoint(&crate::group::exp_alg(c), f)?;
    Ok(HeisDualElement::new(&moved.lambda - &f.lambda, S::zero()))
}

/// Whether `g` fixes `f` under the coadjoint action.
pub fn in_isotropy<S: Scalar>(
    g: &HeisGroupElement<S>,
    f: &HeisDualElement<S>,
    tol: f64,
) -> Result<bool> {
    Ok(coadjoint(g, f)?.approx_eq(f, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{rho, GhatGroupParams};
    use crate::scalar::Rational;
    use crate::symplectic::sharp;

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
    fn l_operator_examples() {
        assert!(l_operator(&ExtVector::<Rational>::zeros(2))
            .matrix
            .is_zero());

        let lf = l_operator(&ExtVector::<Rational>::f_top(2));
        assert_eq!(lf.matrix.support(0.0), vec![(5, 0)]);
        assert_eq!(lf.matrix[(5, 0)], q(2));

        let e0 = ExtVector::<Rational>::e_zero(2);
        let le = l_operator(&e0);
        assert_eq!(le.matrix.support(0.0), vec![(0, 0), (5, 5)]);
        assert_eq!(le.matrix[(0, 0)], q(1));
        assert_eq!(le.matrix[(5, 5)], q(-1));
        assert_eq!(l_operator_outer(&e0).unwrap(), le);
        assert!(le.in_ghat(0.0));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose_ghat(&EmbeddedMatrix::<Rational>::zeros(1)).unwrap(),
            ExtVector::zeros(1)
        );
        let x = rho_alg(&HeisAlgElement::new(v(&[2], &[-1]), q(6)));
        let w = decompose_ghat(&x).unwrap();
        assert_eq!(
            w,
            ExtVector {
                e0: q(0),
                mid: v(&[2], &[-1]),
                top: q(3)
            }
        );
        assert_eq!(l_operator(&w), x);
        let mut outside = x.clone();
        outside.matrix[(1, 1)] = q(1);
        assert!(decompose_ghat(&outside).is_err());
    }

    #[test]
    fn conjugate_l_identity_and_stabilizer() {
        let w = ExtVector {
            e0: q(1),
            mid: v(&[2], &[3]),
            top: q(-1),
        };
        let id = conjugate_l(&EmbeddedMatrix::identity(1), &w).unwrap();
        assert_eq!(id.lhs, l_operator(&w).matrix);
        assert!(id.holds(0.0));

        let p = rho(&HeisGroupElement::new(v(&[1], &[-4]), q(2)));
        let check = conjugate_l(&p, &w).unwrap();
        assert!(check.holds(0.0));
        let pw = ExtVector::from_components(&p.matrix.mul_vec(&w.components())).unwrap();
        assert_eq!(check.rhs, l_operator(&pw).matrix);

        let mut not_symplectic = EmbeddedMatrix::identity(1);
        not_symplectic.matrix[(0, 0)] = q(2);
        assert_eq!(
            conjugate_l(&not_symplectic, &w),
            Err(HeisError::NotSymplectic)
        );
    }

    #[test]
    fn conjugate_l_with_scaling_element() {
        let p = EmbeddedMatrix::from_ghat_group_params(&GhatGroupParams {
            a: Rational::from_ratio(2, 3),
            d: v(&[1], &[1]),
            f: q(-2),
        });
        let w = ExtVector {
            e0: q(3),
            mid: v(&[0], &[5]),
            top: q(1),
        };
        assert!(conjugate_l(&p, &w).unwrap().holds(0.0));
    }

    #[test]
    fn reduce_tuple_example() {
        let tuple = TupleRep::from_params(&GhatParams {
            zeta: q(2),
            d: v(&[3], &[4]),
            xi: q(5),
        });
        let red = reduce_tuple(&tuple).unwrap();
        assert_eq!(
            red.w,
            ExtVector {
                e0: q(-2),
                mid: v(&[-3], &[-4]),
                top: q(0)
            }
        );
        assert_eq!(red.descriptor.modulus, q(5));
        assert_eq!(red.descriptor.height, 1);
        assert_eq!(red.descriptor.zero_type_dim, 2);
        assert_eq!(red.residual.matrix.support(0.0), vec![(3, 0)]);
        assert_eq!(red.residual.matrix[(3, 0)], q(5));
        assert_eq!(nilpotent_height(&red.residual, 0.0), Some(1));
    }

    #[test]
    fn reduce_tuple_normal_and_zero_cases() {
        let normal = TupleRep::from_params(&GhatParams {
            zeta: q(0),
            d: v(&[0, 0], &[0, 0]),
            xi: Rational::from_ratio(7, 3),
        });
        let red = reduce_tuple(&normal).unwrap();
        assert_eq!(red.w, ExtVector::zeros(2));
        assert_eq!(red.descriptor.modulus, Rational::from_ratio(7, 3));

        let zero = TupleRep::new(EmbeddedMatrix::<Rational>::zeros(2));
        let red = reduce_tuple(&zero).unwrap();
        assert_eq!(red.descriptor.height, 0);
        assert_eq!(red.descriptor.zero_type_dim, 6);
        assert_eq!(red.descriptor.kind(), OrbitKind::FixedPoint);
        assert_eq!(nilpotent_height(&red.residual, 0.0), Some(0));
    }

    #[test]
    fn reduce_rejects_matrices_outside_ghat() {
        let mut m = EmbeddedMatrix::<Rational>::zeros(1);
        m.matrix[(1, 2)] = q(1);
        assert!(matches!(
            reduce_tuple(&TupleRep::new(m)),
            Err(HeisError::NotMember {
                predicate: "ghat",
                ..
            })
        ));
    }

    #[test]
    fn restrict_functional_examples() {
        let y = EmbeddedMatrix::from_ghat_params(&GhatParams {
            zeta: q(4),
            d: v(&[1, 2], &[3, 4]),
            xi: q(-7),
        });
        assert_eq!(restrict_functional(&y), HeisDualElement::h_mu(2, q(0)));

        let e_top = EmbeddedMatrix::new(1, Matrix::elementary(4, 0, 3, q(1))).unwrap();
        assert_eq!(restrict_functional(&e_top), HeisDualElement::h_mu(1, q(1)));
        // the transposed reading pairs to zero against ĝ_{f_{n+1}}
        let e_bottom = EmbeddedMatrix::new(1, Matrix::elementary(4, 3, 0, q(1))).unwrap();
        assert_eq!(
            restrict_functional(&e_bottom),
            HeisDualElement::h_mu(1, q(0))
        );
    }

    #[test]
    fn restrict_functional_closed_form() {
        // λ_k = Y[0][k] + Σ_j Y[j][2n+1] J[j-1][k-1], μ = Y[0][2n+1]
        let n = 2;
        let size = 2 * n + 2;
        let y = EmbeddedMatrix::new(
            n,
            Matrix::from_fn(size, size, |i, j| q((i * 7 + j * 3) as i64 % 5 - 2)),
        )
        .unwrap();
        let f = restrict_functional(&y);
        let half_j = ExtendedForm::<Rational>::new(n).unwrap().half_block();
        let lambda: Vec<Rational> = (0..2 * n)
            .map(|k| {
                (0..2 * n).fold(y.matrix[(0, k + 1)].clone(), |acc, j| {
                    acc + y.matrix[(j + 1, size - 1)].clone() * half_j[(j, k)].clone()
                })
            })
            .collect();
        assert_eq!(f.lambda.components(), lambda);
        assert_eq!(f.mu, y.matrix[(0, size - 1)]);
    }

    #[test]
    fn conjugation_invariance_examples() {
        let id = conjugation_invariance_check(&EmbeddedMatrix::identity(2), q(3)).unwrap();
        assert!(id.holds(0.0));
        let p = rho(&HeisGroupElement::new(
            v(&[3], &[-1]),
            Rational::from_ratio(1, 2),
        ));
        assert!(conjugation_invariance_check(&p, q(1)).unwrap().holds(0.0));
        let zero = conjugation_invariance_check(&p, q(0)).unwrap();
        assert!(zero.lhs.is_zero() && zero.holds(0.0));
        let scaling = EmbeddedMatrix::from_ghat_group_params(&GhatGroupParams {
            a: q(2),
            d: v(&[0], &[0]),
            f: q(0),
        });
        assert!(conjugation_invariance_check(&scaling, q(1)).is_err());
    }

    #[test]
    fn classify_examples() {
        let generic = classify_dual(&HeisDualElement::h_mu(1, q(5)));
        assert_eq!(generic.kind, OrbitKind::Generic);
        assert_eq!(generic.normalizer, Some(HeisGroupElement::identity(1)));

        let fixed_input =
            HeisDualElement::new(SympCovector::new(vec![q(1)], vec![q(2)]).unwrap(), q(0));
        let fixed = classify_dual(&fixed_input);
        assert_eq!(fixed.kind, OrbitKind::FixedPoint);
        assert_eq!(fixed.representative, fixed_input);
        assert!(fixed.normalizer.is_none());
        assert!(fixed.verify(&fixed_input, 0.0).unwrap());

        let f = HeisDualElement::new(sharp(&v(&[2], &[3])), q(5));
        let desc = classify_dual(&f);
        let g = desc.normalizer.clone().unwrap();
        assert_eq!(
            g.v,
            SympVector::new(
                vec![Rational::from_ratio(2, 5)],
                vec![Rational::from_ratio(3, 5)]
            )
            .unwrap()
        );
        assert_eq!(coadjoint(&g, &f).unwrap(), HeisDualElement::h_mu(1, q(5)));
        assert!(desc.verify(&f, 0.0).unwrap());
    }

    #[test]
    fn orbit_pairing_examples() {
        let e1 = HeisAlgElement::new(v(&[1], &[0]), q(0));
        let f1 = HeisAlgElement::new(v(&[0], &[1]), q(0));
        assert_eq!(
            orbit_pairing(&HeisDualElement::h_mu(1, q(1)), &e1, &f1).unwrap(),
            q(1)
        );
        assert_eq!(
            orbit_pairing(&HeisDualElement::h_mu(1, q(5)), &e1, &f1).unwrap(),
            q(5)
        );
        assert_eq!(
            orbit_pairing(&HeisDualElement::h_mu(1, q(5)), &e1, &e1).unwrap(),
            q(0)
        );
        let f = HeisDualElement::new(sharp(&v(&[4], &[-2])), q(3));
        let g = HeisGroupElement::new(v(&[1], &[7]), q(2));
        assert_eq!(
            orbit_pairing(&f, &e1, &f1).unwrap(),
            orbit_pairing(&coadjoint(&g, &f).unwrap(), &e1, &f1).unwrap()
        );
    }

    #[test]
    fn orbit_tangent_matches_pairing() {
        // f(X^b) pairing: ⟨X^a(f), b⟩ = −μ ω(a.x, b.x) = −f([a,b])
        let f = HeisDualElement::new(sharp(&v(&[1], &[2])), q(3));
        let a = HeisAlgElement::new(v(&[2], &[-1]), q(5));
        let b = HeisAlgElement::new(v(&[1], &[4]), q(-3));
        let tangent = orbit_tangent(&f, &a).unwrap();
        assert_eq!(
            tangent.eval(&b).unwrap(),
            -orbit_pairing(&f, &a, &b).unwrap()
        );
    }

    #[test]
    fn isotropy_of_h_mu_is_the_center() {
        let h = HeisDualElement::h_mu(1, q(2));
        assert!(in_isotropy(&HeisGroupElement::central(1, q(9)), &h, 0.0).unwrap());
        assert!(!in_isotropy(&HeisGroupElement::new(v(&[0], &[1]), q(0)), &h, 0.0).unwrap());
    }
}
