//! Random instance generators for the randomized identity checks.
//!
//! Scalars are drawn as small fractions `p/q`, so the same draw is usable in
//! exact and float mode.

use rand::Rng;

use crate::group::{
    EmbeddedMatrix, GhatGroupParams, GhatParams, HeisAlgElement, HeisDualElement, HeisGroupElement,
};
use crate::scalar::Scalar;
use crate::symplectic::{ExtVector, SympCovector, SympVector};

const MAX_NUMERATOR: i64 = 9;
const MAX_DENOMINATOR: i64 = 6;

pub fn scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    let num = rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR);
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    S::from_ratio(num, den)
}

pub fn nonzero_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let s: S = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn scalars<S: Scalar, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<S> {
    (0..len).map(|_| scalar(rng)).collect()
}

pub fn vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> SympVector<S> {
    SympVector {
        x: scalars(rng, n),
        y: scalars(rng, n),
    }
}

pub fn nonzero_vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> SympVector<S> {
    loop {
        let v = vector(rng, n);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn covector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> SympCovector<S> {
    SympCovector {
        x: scalars(rng, n),
        y: scalars(rng, n),
    }
}

pub fn ext_vector<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExtVector<S> {
    ExtVector {
        e0: scalar(rng),
        mid: vector(rng, n),
        top: scalar(rng),
    }
}

pub fn group_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> HeisGroupElement<S> {
    HeisGroupElement::new(vector(rng, n), scalar(rng))
}

pub fn alg_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> HeisAlgElement<S> {
    HeisAlgElement::new(vector(rng, n), scalar(rng))
}

pub fn dual_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> HeisDualElement<S> {
    HeisDualElement::new(covector(rng, n), scalar(rng))
}

pub fn ghat_params<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> GhatParams<S> {
    GhatParams {
        zeta: scalar(rng),
        d: vector(rng, n),
        xi: scalar(rng),
    }
}

pub fn ghat_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> EmbeddedMatrix<S> {
    EmbeddedMatrix::from_ghat_params(&ghat_params(rng, n))
}

/// Element of `Ĝ` from its `(a, d, f)` parameters; symplectic by construction.
pub fn ghat_group_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> EmbeddedMatrix<S> {
    EmbeddedMatrix::from_ghat_group_params(&GhatGroupParams {
        a: nonzero_scalar(rng),
        d: vector(rng, n),
        f: scalar(rng),
    })
}

/// Element of `Ĝ_{f_{n+1}}` (`a = 1`).
pub fn stabilizer_element<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> EmbeddedMatrix<S> {
    EmbeddedMatrix::from_ghat_group_params(&GhatGroupParams {
        a: S::one(),
        d: vector(rng, n),
        f: scalar(rng),
    })
}
