//! Momentum maps for translations of `(R^{2n}, ω)`.
//!
//! The abelian action `v ↦ v + a` has momentum `J^x(v) = ω(x, v)`, which is
//! not coadjoint equivariant; its defect is the cocycle `Σ(y, z) = ω(y, z)`.
//! The centrally extended action of `H_{2n+1}` has momentum
//! `J^{(x,ξ)}(v) = ω(x, v) + ξ`, which is equivariant and has the single
//! generic orbit of modulus 1 as its image.

use crate::error::{HeisError, Result};
use crate::group::{EmbeddedMatrix, HeisDualElement, MEMBERSHIP_TOL};
use crate::orbits::{classify_dual, OrbitKind};
use crate::scalar::Scalar;
use crate::symplectic::{flat, omega, sharp, SympCovector, SympVector};

/// The functional `x ↦ ω(x, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMomentumValue<S>(pub SympCovector<S>);

impl<S: Scalar> AffineMomentumValue<S> {
    pub fn eval(&self, x: &SympVector<S>) -> Result<S> {
        self.0.eval(x)
    }
}

pub fn affine_momentum<S: Scalar>(v: &SympVector<S>) -> AffineMomentumValue<S> {
    // ω(x, v) = −ω(v, x)
    AffineMomentumValue(-&sharp(v))
}

/// `J^x(v) = ω(x, v)`.
pub fn affine_hamiltonian<S: Scalar>(x: &SympVector<S>, v: &SympVector<S>) -> Result<S> {
    omega(x, v)
}

/// Infinitesimal generator of translations: `X^x(v) = x`.
pub fn affine_generator<S: Scalar>(x: &SympVector<S>, _v: &SympVector<S>) -> SympVector<S> {
    x.clone()
}

/// `Σ(y, z) = ω(y, z)`.
pub fn affine_cocycle<S: Scalar>(y: &SympVector<S>, z: &SympVector<S>) -> Result<S> {
    omega(y, z)
}

/// `{J^y, J^z}(v) = dJ^y(v) X^z(v)`. `J^y` is linear, so the derivative is
/// the exact difference `J^y(v + X^z(v)) − J^y(v)`.
pub fn affine_poisson_bracket<S: Scalar>(
    y: &SympVector<S>,
    z: &SympVector<S>,
    v: &SympVector<S>,
) -> Result<S> {
    let dir = affine_generator(z, v);
    let moved = v.checked_add(&dir)?;
    Ok(affine_hamiltonian(y, &moved)? - affine_hamiltonian(y, v)?)
}

/// `{J^y, J^z}(v) − J^{[y,z]}(v)`; the abelian bracket `[y, z]` is zero.
pub fn cocycle_at<S: Scalar>(y: &SympVector<S>, z: &SympVector<S>, v: &SympVector<S>) -> Result<S> {
    let abelian_bracket = SympVector::zeros(y.n());
    Ok(affine_poisson_bracket(y, z, v)? - affine_hamiltonian(&abelian_bracket, v)?)
}

/// Central difference of `J^x` at `v` along `w`.
pub fn affine_directional_derivative_fd(
    x: &SympVector<f64>,
    v: &SympVector<f64>,
    w: &SympVector<f64>,
    step: f64,
) -> Result<f64> {
    let fwd = v.checked_add(&w.scale(&step))?;
    let bwd = v.checked_sub(&w.scale(&step))?;
    Ok((affine_hamiltonian(x, &fwd)? - affine_hamiltonian(x, &bwd)?) / (2.0 * step))
}

/// `J(v)` with `J(v)(x, ξ) = ω(x, v) + ξ`, i.e. `λ = −ω♯(v)`, `μ = 1`.
pub fn heis_momentum<S: Scalar>(v: &SympVector<S>) -> HeisDualElement<S> {
    HeisDualElement::new(-&sharp(v), S::one())
}

/// `J(v)` evaluated on an element of `ĝ_{f_{n+1}}` given as a matrix.
pub fn heis_momentum_on_matrix<S: Scalar>(v: &SympVector<S>, x: &EmbeddedMatrix<S>) -> Result<S> {
    let tol = if S::EXACT { 0.0 } else { MEMBERSHIP_TOL };
    let a = x.ghat_f_element(tol)?;
    heis_momentum(v).eval(&a)
}

/// The `v` with `J(v) = f`; only exists on the hyperplane `μ = 1`.
pub fn momentum_preimage<S: Scalar>(f: &HeisDualElement<S>) -> Result<SympVector<S>> {
    if f.mu != S::one() {
        return Err(HeisError::NoPreimage(format!("mu = {} is not 1", f.mu)));
    }
    Ok(-&flat(&f.lambda))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTag<S> {
    pub kind: OrbitKind,
    pub modulus: S,
    pub dim: usize,
}

/// Image of the Heisenberg momentum map: the coadjoint orbit through `J(0)`.
pub fn momentum_image<S: Scalar>(n: usize) -> Result<OrbitTag<S>> {
    if n == 0 {
        return Err(HeisError::ZeroDimension);
    }
    let desc = classify_dual(&heis_momentum(&SympVector::<S>::zeros(n)));
    Ok(OrbitTag {
        kind: desc.kind,
        modulus: desc.mu,
        dim: 2 * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{coadjoint, rho_alg, HeisAlgElement, HeisGroupElement};
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
    fn affine_momentum_examples() {
        assert!(affine_momentum(&SympVector::<Rational>::zeros(2))
            .0
            .is_zero());
        let j = affine_momentum(&v(&[0], &[1]));
        assert_eq!(j.eval(&v(&[1], &[0])).unwrap(), q(1));
    }

    #[test]
    fn affine_shift_identity() {
        let base = v(&[1, -2], &[3, 0]);
        let a = v(&[2, 5], &[-1, 4]);
        let x = v(&[7, 1], &[0, -3]);
        let lhs = affine_momentum(&(&base + &a)).eval(&x).unwrap();
        let rhs = affine_momentum(&base).eval(&x).unwrap() + omega(&x, &a).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cocycle_examples() {
        let y = v(&[1], &[0]);
        let z = v(&[0], &[1]);
        assert_eq!(affine_cocycle(&y, &z).unwrap(), q(1));
        assert_eq!(affine_cocycle(&y, &y).unwrap(), q(0));
        for base in [v(&[0], &[0]), v(&[5], &[-3]), v(&[-9], &[2])] {
            assert_eq!(cocycle_at(&y, &z, &base).unwrap(), q(1));
        }
    }

    #[test]
    fn finite_difference_matches_gradient() {
        let x = SympVector::new(vec![0.3, -1.2], vec![2.0, 0.5]).unwrap();
        let base = SympVector::new(vec![1.0, 4.0], vec![-2.0, 0.25]).unwrap();
        let w = SympVector::new(vec![-0.7, 0.1], vec![0.9, 1.5]).unwrap();
        let fd = affine_directional_derivative_fd(&x, &base, &w, 1e-4).unwrap();
        let exact = omega(&x, &w).unwrap();
        assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0));
    }

    #[test]
    fn heis_momentum_at_origin_picks_central_coordinate() {
        let j0 = heis_momentum(&SympVector::<Rational>::zeros(2));
        assert_eq!(j0, HeisDualElement::h_mu(2, q(1)));
        let a = HeisAlgElement::new(v(&[3, 1], &[4, 1]), q(5));
        assert_eq!(j0.eval(&a).unwrap(), q(5));
    }

    #[test]
    fn heis_momentum_is_equivariant() {
        let base = v(&[2], &[-1]);
        let g = HeisGroupElement::new(v(&[1], &[3]), q(7));
        let moved = heis_momentum(&(&base + &g.v));
        assert_eq!(moved, coadjoint(&g, &heis_momentum(&base)).unwrap());
        assert_eq!(moved.mu, q(1));
    }

    #[test]
    fn matrix_front_end_delegates_to_intrinsic_formula() {
        let base = v(&[2, 0], &[1, -1]);
        let a = HeisAlgElement::new(v(&[1, 3], &[0, 2]), q(-4));
        assert_eq!(
            heis_momentum_on_matrix(&base, &rho_alg(&a)).unwrap(),
            omega(&a.x, &base).unwrap() + a.xi.clone()
        );
        let mut not_in_algebra = rho_alg(&a);
        not_in_algebra.matrix[(0, 0)] = q(1);
        assert!(heis_momentum_on_matrix(&base, &not_in_algebra).is_err());
    }

    #[test]
    fn image_is_generic_orbit_of_modulus_one() {
        let tag = momentum_image::<Rational>(3).unwrap();
        assert_eq!(tag.kind, OrbitKind::Generic);
        assert_eq!(tag.modulus, q(1));
        assert_eq!(tag.dim, 6);
        assert!(momentum_image::<Rational>(0).is_err());
    }

    #[test]
    fn preimage_inverts_momentum() {
        let f = HeisDualElement::new(SympCovector::new(vec![q(3)], vec![q(-5)]).unwrap(), q(1));
        let base = momentum_preimage(&f).unwrap();
        assert_eq!(heis_momentum(&base), f);
        assert!(momentum_preimage(&HeisDualElement::h_mu(1, q(2))).is_err());
    }
}
