//! Geometric quantization of `T*Rⁿ = R^{2n}` with `θ = ⟨y, dx⟩`.
//!
//! Sections of the trivial line bundle are identified with functions through
//! the unit section. Operators act on two kinds of functions: the closed-form
//! [`TestFunction`] family, where every operator is exact, and sampled
//! [`GridFunction`]s, where derivatives are finite differences and the
//! Hilbert-space pairing is a quadrature.

mod grid;
mod operators;
mod poly;
mod representation;
mod testfn;

use rand::Rng;

use crate::error::{HeisError, Result};

pub use grid::{inner_product, GridFunction, GridSpec, MIN_FD_SAMPLES};
pub use operators::{
    covariant_derivative, hamiltonian_vf, momentum_observable, prequant_op, quant_op,
    quant_op_grid, theta_contraction, PhaseVectorField,
};
pub use poly::Polynomial;
pub use representation::{
    infinitesimal_check, observed_order, rep_s, rep_s_grid, twist_psi, twisted_s1, wallach_s1,
};
pub use testfn::{Term, TestFunction};

/// `(ξ, η, s) ∈ 𝔥`, labelling the observable `⟨ξ, y⟩ − ⟨η, x⟩ + s`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisAlg3 {
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
    pub s: f64,
}

impl HeisAlg3 {
    pub fn new(xi: Vec<f64>, eta: Vec<f64>, s: f64) -> Result<Self> {
        if xi.is_empty() {
            return Err(HeisError::ZeroDimension);
        }
        if xi.len() != eta.len() {
            return Err(HeisError::DimensionMismatch {
                expected: xi.len(),
                found: eta.len(),
            });
        }
        Ok(Self { xi, eta, s })
    }

    pub fn central(n: usize, s: f64) -> Self {
        Self {
            xi: vec![0.0; n],
            eta: vec![0.0; n],
            s,
        }
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    /// `[(ξ,η,s), (ξ',η',s')] = (0, 0, ⟨ξ,η'⟩ − ⟨η,ξ'⟩)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(HeisError::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let a: f64 = self.xi.iter().zip(&other.eta).map(|(p, q)| p * q).sum();
        let b: f64 = self.eta.iter().zip(&other.xi).map(|(p, q)| p * q).sum();
        Ok(Self::central(self.n(), a - b))
    }

    /// Components drawn uniformly from `[−bound, bound]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: f64) -> Self {
        let mut draw = || rng.gen_range(-bound..=bound);
        let xi = (0..n).map(|_| draw()).collect();
        let eta = (0..n).map(|_| draw()).collect();
        Self { xi, eta, s: draw() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{omega, SympVector};

    #[test]
    fn bracket_is_symplectic_pairing_of_fields() {
        let a = HeisAlg3::new(vec![1.0, -2.0], vec![0.5, 3.0], 4.0).unwrap();
        let b = HeisAlg3::new(vec![0.25, 1.0], vec![-1.0, 2.0], -7.0).unwrap();
        let c = a.bracket(&b).unwrap();
        assert_eq!(c.xi, vec![0.0, 0.0]);
        assert_eq!(c.eta, vec![0.0, 0.0]);
        let fa = hamiltonian_vf(&a);
        let fb = hamiltonian_vf(&b);
        let w = omega(
            &SympVector { x: fa.x, y: fa.y },
            &SympVector { x: fb.x, y: fb.y },
        )
        .unwrap();
        assert_eq!(c.s, w);
        assert_eq!(b.bracket(&a).unwrap().s, -w);
    }

    #[test]
    fn constructor_validates() {
        assert!(HeisAlg3::new(vec![], vec![], 0.0).is_err());
        assert!(HeisAlg3::new(vec![1.0], vec![1.0, 2.0], 0.0).is_err());
    }
}
