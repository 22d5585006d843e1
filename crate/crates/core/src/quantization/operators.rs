use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::GridFunction;
use super::testfn::TestFunction;
use super::HeisAlg3;
use crate::error::{HeisError, Result};

/// Constant vector field `⟨X_x, ∂/∂x⟩ + ⟨X_y, ∂/∂y⟩` on `R^{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVectorField {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PhaseVectorField {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(HeisError::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            x: vec![0.0; n],
            y: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn components(&self) -> Vec<f64> {
        self.x.iter().chain(&self.y).copied().collect()
    }
}

fn check_phase_dim(n: usize, f: &TestFunction) -> Result<()> {
    if f.dim() != 2 * n {
        return Err(HeisError::DimensionMismatch {
            expected: 2 * n,
            found: f.dim(),
        });
    }
    Ok(())
}

fn check_config_dim(n: usize, found: usize) -> Result<()> {
    if found != n {
        return Err(HeisError::DimensionMismatch { expected: n, found });
    }
    Ok(())
}

/// `X⌟θ = ⟨y, X_x⟩` at the phase-space point `(x, y)`.
pub fn theta_contraction(field: &PhaseVectorField, point: &[f64]) -> Result<f64> {
    let n = field.n();
    check_config_dim(2 * n, point.len())?;
    Ok(point[n..].iter().zip(&field.x).map(|(y, v)| y * v).sum())
}

/// `∇_X f = L_X f + 2πi(X⌟θ) f`.
pub fn covariant_derivative(field: &PhaseVectorField, f: &TestFunction) -> Result<TestFunction> {
    let n = field.n();
    check_phase_dim(n, f)?;
    let mut linear = vec![Complex64::new(0.0, 0.0); 2 * n];
    for j in 0..n {
        linear[n + j] = Complex64::new(0.0, 2.0 * PI * field.x[j]);
    }
    let connection = f.mul_affine(Complex64::new(0.0, 0.0), &linear);
    Ok(f.directional(&field.components()).add(&connection))
}

/// `X_F` for `F = J^a`, which is the constant field `(ξ, η)`.
pub fn hamiltonian_vf(a: &HeisAlg3) -> PhaseVectorField {
    PhaseVectorField {
        x: a.xi.clone(),
        y: a.eta.clone(),
    }
}

/// `J^a(x, y) = ⟨ξ, y⟩ − ⟨η, x⟩ + s`.
pub fn momentum_observable(a: &HeisAlg3, point: &[f64]) -> Result<f64> {
    let n = a.n();
    check_config_dim(2 * n, point.len())?;
    let (x, y) = point.split_at(n);
    let xi_y: f64 = a.xi.iter().zip(y).map(|(p, q)| p * q).sum();
    let eta_x: f64 = a.eta.iter().zip(x).map(|(p, q)| p * q).sum();
    Ok(xi_y - eta_x + a.s)
}

/// `𝒫(a) f = −∇_{X_F} f + 2πi F f` with `F = J^a`.
pub fn prequant_op(a: &HeisAlg3, f: &TestFunction) -> Result<TestFunction> {
    let n = a.n();
    check_phase_dim(n, f)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut linear = Vec::with_capacity(2 * n);
    linear.extend(a.eta.iter().map(|e| -two_pi_i * e));
    linear.extend(a.xi.iter().map(|x| two_pi_i * x));
    let f_times_obs = f.mul_affine(two_pi_i * a.s, &linear);
    let nabla = covariant_derivative(&hamiltonian_vf(a), f)?;
    Ok(f_times_obs.sub(&nabla))
}

/// `𝒬(a) f = −⟨ξ, ∂f/∂x⟩ + 2πi(s − ⟨η, x⟩) f`, with analytic derivatives.
pub fn quant_op(a: &HeisAlg3, f: &TestFunction) -> Result<TestFunction> {
    check_config_dim(a.n(), f.dim())?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let linear: Vec<Complex64> = a.eta.iter().map(|e| -two_pi_i * e).collect();
    let mult = f.mul_affine(two_pi_i * a.s, &linear);
    Ok(mult.sub(&f.directional(&a.xi)))
}

/// [`quant_op`] on sampled data, with fourth-order central differences.
pub fn quant_op_grid(a: &HeisAlg3, f: &GridFunction) -> Result<GridFunction> {
    let spec = *f.spec();
    check_config_dim(a.n(), spec.n())?;
    let mut derivs = Vec::with_capacity(a.n());
    for j in 0..a.n() {
        derivs.push(f.partial(j)?);
    }
    let two_pi = 2.0 * PI;
    Ok(f.map_indexed(|k, v| {
        let z = spec.point(k);
        let eta_z: f64 = a.eta.iter().zip(&z).map(|(e, x)| e * x).sum();
        let mut out = v * Complex64::new(0.0, two_pi * (a.s - eta_z));
        for (j, d) in derivs.iter().enumerate() {
            out -= d.values()[k] * a.xi[j];
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantization::grid::GridSpec;
    use crate::quantization::poly::Polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn points(dim: usize, count: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect()
    }

    fn sup_diff(f: &TestFunction, g: &TestFunction, pts: &[Vec<f64>]) -> f64 {
        pts.iter()
            .fold(0.0, |m, z| m.max((f.eval(z) - g.eval(z)).norm()))
    }

    fn one(dim: usize) -> TestFunction {
        TestFunction::from_term(crate::quantization::testfn::Term {
            poly: Polynomial::constant(dim, Complex64::new(1.0, 0.0)),
            width: vec![0.0; dim],
            freq: vec![0.0; dim],
            center: vec![0.0; dim],
        })
    }

    #[test]
    fn contraction_examples() {
        let pt = [0.5, -1.0, 2.0, 3.0];
        assert_eq!(
            theta_contraction(&PhaseVectorField::zero(2), &pt).unwrap(),
            0.0
        );
        let dx1 = PhaseVectorField::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(theta_contraction(&dx1, &pt).unwrap(), 3.0);
        let dy0 = PhaseVectorField::new(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert_eq!(theta_contraction(&dy0, &pt).unwrap(), 0.0);
        assert!(theta_contraction(&dy0, &[1.0]).is_err());
    }

    #[test]
    fn covariant_derivative_of_constant() {
        let dx0 = PhaseVectorField::new(vec![1.0], vec![0.0]).unwrap();
        let g = covariant_derivative(&dx0, &one(2)).unwrap();
        for z in points(2, 10) {
            assert!((g.eval(&z) - Complex64::new(0.0, 2.0 * PI * z[1])).norm() < 1e-12);
        }
        let dy0 = PhaseVectorField::new(vec![0.0], vec![1.0]).unwrap();
        assert!(covariant_derivative(&dy0, &one(2))
            .unwrap()
            .terms()
            .is_empty());
        assert!(covariant_derivative(&PhaseVectorField::zero(1), &one(2))
            .unwrap()
            .terms()
            .is_empty());
    }

    #[test]
    fn prequant_central_and_translation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = TestFunction::random(&mut rng, 4, 2, (0.5, 1.0), 0.5, 0.5);
        let pts = points(4, 20);
        let central = HeisAlg3::new(vec![0.0; 2], vec![0.0; 2], 1.0).unwrap();
        let expected = f.scale(Complex64::new(0.0, 2.0 * PI));
        assert!(sup_diff(&prequant_op(&central, &f).unwrap(), &expected, &pts) < 1e-12);

        let a = HeisAlg3::new(vec![0.3, -0.7], vec![0.0; 2], 0.0).unwrap();
        let expected = f
            .directional(&[0.3, -0.7, 0.0, 0.0])
            .scale(Complex64::new(-1.0, 0.0));
        assert!(sup_diff(&prequant_op(&a, &f).unwrap(), &expected, &pts) < 1e-12);
    }

    #[test]
    fn gaussian_example() {
        let f = TestFunction::gaussian(1, 1.0, vec![0.0]).unwrap();
        let a = HeisAlg3::new(vec![1.0], vec![0.0], 0.0).unwrap();
        let g = quant_op(&a, &f).unwrap();
        for z in points(1, 20) {
            let x = z[0];
            assert!((g.eval(&z) - Complex64::new(2.0 * x * (-x * x).exp(), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_and_analytic_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = TestFunction::random(&mut rng, 1, 2, (3.0, 4.0), 0.5, 0.5);
        let a = HeisAlg3::new(vec![0.4], vec![-0.3], 0.2).unwrap();
        let spec = GridSpec::new(1, 8.0, 2048).unwrap();
        let grid = quant_op_grid(&a, &GridFunction::sample(spec, &f).unwrap()).unwrap();
        let exact = GridFunction::sample(spec, &quant_op(&a, &f).unwrap()).unwrap();
        assert!(grid.max_abs_diff(&exact).unwrap() < 1e-7);
        let coarse = GridSpec::new(1, 8.0, 8).unwrap();
        assert!(quant_op_grid(&a, &GridFunction::sample(coarse, &f).unwrap()).is_err());
    }

    #[test]
    fn observable_and_field() {
        let a = HeisAlg3::new(vec![1.0, 2.0], vec![3.0, 4.0], 5.0).unwrap();
        assert_eq!(momentum_observable(&a, &[1.0, 1.0, 1.0, 1.0]).unwrap(), 1.0);
        let field = hamiltonian_vf(&a);
        assert_eq!(field.x, vec![1.0, 2.0]);
        assert_eq!(field.y, vec![3.0, 4.0]);
    }
}
