//! Heisenberg group `H_{2n+1}`: group and Lie algebra arithmetic, the
//! momentum maps of translations on `(R^{2n}, ω)`, coadjoint orbit
//! classification with its modulus, and the Schrödinger representations
//! `S_ξ` obtained by geometric quantization.
//!
//! Every algebraic construction is generic over [`Scalar`], so identities can
//! be checked exactly over [`Rational`] or approximately over `f64`.

pub mod error;
pub mod group;
pub mod matrix;
pub mod momentum;
pub mod orbits;
pub mod quantization;
pub mod random;
pub mod scalar;
pub mod symplectic;

pub use error::{HeisError, Result};
pub use group::{
    ad, bracket, coadjoint, exp_alg, mul, rho, rho_alg, EmbeddedMatrix, HeisAlgElement,
    HeisDualElement, HeisGroupElement,
};
pub use matrix::Matrix;
pub use orbits::{
    classify_dual, reduce_tuple, CotypeDescriptor, OrbitDescriptor, OrbitKind, TupleRep,
};
pub use scalar::{Rational, Scalar};
pub use symplectic::{
    extended_form, flat, omega, sharp, ExtVector, ExtendedForm, SympCovector, SympForm, SympVector,
};
