use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::poly::Polynomial;
use crate::error::{HeisError, Result};

/// `z ↦ p(z)·exp(−Σ a_j (z_j − c_j)² + 2πi⟨b, z⟩)`.
///
/// Widths are per axis. A zero width (with zero frequency) gives a factor
/// constant along that axis, which is how functions of `x` are lifted to
/// phase space.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub poly: Polynomial,
    pub width: Vec<f64>,
    pub freq: Vec<f64>,
    pub center: Vec<f64>,
}

impl Term {
    fn same_envelope(&self, other: &Self) -> bool {
        self.width == other.width && self.freq == other.freq && self.center == other.center
    }

    fn with_poly(&self, poly: Polynomial) -> Self {
        Self {
            poly,
            width: self.width.clone(),
            freq: self.freq.clone(),
            center: self.center.clone(),
        }
    }

    pub fn eval(&self, z: &[f64]) -> Complex64 {
        let mut exponent = Complex64::new(0.0, 0.0);
        for (j, &zj) in z.iter().enumerate() {
            let d = zj - self.center[j];
            exponent += Complex64::new(-self.width[j] * d * d, 2.0 * PI * self.freq[j] * zj);
        }
        self.poly.eval(z) * exponent.exp()
    }

    fn partial(&self, j: usize) -> Self {
        let dim = self.poly.dim();
        let mut lin = vec![Complex64::new(0.0, 0.0); dim];
        lin[j] = Complex64::new(-2.0 * self.width[j], 0.0);
        let c0 = Complex64::new(
            2.0 * self.width[j] * self.center[j],
            2.0 * PI * self.freq[j],
        );
        let log_deriv = Polynomial::affine(c0, &lin);
        self.with_poly(self.poly.partial(j).add(&self.poly.mul(&log_deriv)))
    }

    fn translate(&self, shift: &[f64]) -> Self {
        let phase: f64 = self.freq.iter().zip(shift).map(|(b, x)| b * x).sum();
        Self {
            poly: self
                .poly
                .translate(shift)
                .scale(Complex64::from_polar(1.0, -2.0 * PI * phase)),
            width: self.width.clone(),
            freq: self.freq.clone(),
            center: self.center.iter().zip(shift).map(|(c, x)| c + x).collect(),
        }
    }
}

/// Finite sum of [`Term`]s on `R^dim`, with analytic derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    dim: usize,
    terms: Vec<Term>,
}

impl TestFunction {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
        }
    }

    /// `p(z)·exp(−a‖z − c‖² + 2πi⟨b, z⟩)` with `a > 0`.
    pub fn new(poly: Polynomial, a: f64, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        let dim = poly.dim();
        if dim == 0 {
            return Err(HeisError::ZeroDimension);
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(HeisError::Malformed(format!(
                "Gaussian width must be positive, got {a}"
            )));
        }
        for v in [&b, &c] {
            if v.len() != dim {
                return Err(HeisError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        Ok(Self::from_term(Term {
            poly,
            width: vec![a; dim],
            freq: b,
            center: c,
        }))
    }

    /// `exp(−a‖z − c‖²)`.
    pub fn gaussian(dim: usize, a: f64, c: Vec<f64>) -> Result<Self> {
        Self::new(
            Polynomial::constant(dim, Complex64::new(1.0, 0.0)),
            a,
            vec![0.0; dim],
            c,
        )
    }

    pub fn from_term(term: Term) -> Self {
        let mut f = Self::zero(term.poly.dim());
        f.push(term);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    fn push(&mut self, term: Term) {
        if term.poly.is_zero() {
            return;
        }
        if let Some(existing) = self.terms.iter_mut().find(|t| t.same_envelope(&term)) {
            existing.poly = existing.poly.add(&term.poly);
            self.terms.retain(|t| !t.poly.is_zero());
        } else {
            self.terms.push(term);
        }
    }

    fn map_terms(&self, f: impl Fn(&Term) -> Term) -> Self {
        let mut out = Self::zero(self.dim);
        for t in &self.terms {
            out.push(f(t));
        }
        out
    }

    pub fn eval(&self, z: &[f64]) -> Complex64 {
        assert_eq!(z.len(), self.dim, "evaluation point dimension mismatch");
        self.terms.iter().map(|t| t.eval(z)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "test function dimension mismatch");
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_terms(|t| t.with_poly(t.poly.scale(factor)))
    }

    /// `∂f/∂z_j`.
    pub fn partial(&self, j: usize) -> Self {
        assert!(j < self.dim, "axis out of range");
        self.map_terms(|t| t.partial(j))
    }

    /// `Σ_j v_j ∂f/∂z_j`.
    pub fn directional(&self, v: &[f64]) -> Self {
        assert_eq!(v.len(), self.dim, "direction dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0.0 {
                out = out.add(&self.partial(j).scale(Complex64::new(vj, 0.0)));
            }
        }
        out
    }

    /// Multiplication by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        assert_eq!(p.dim(), self.dim, "polynomial dimension mismatch");
        self.map_terms(|t| t.with_poly(t.poly.mul(p)))
    }

    /// Multiplication by `c₀ + Σ c_j z_j`.
    pub fn mul_affine(&self, c0: Complex64, linear: &[Complex64]) -> Self {
        self.mul_poly(&Polynomial::affine(c0, linear))
    }

    /// `z ↦ f(z − shift)`.
    pub fn translate(&self, shift: &[f64]) -> Self {
        assert_eq!(shift.len(), self.dim, "shift dimension mismatch");
        self.map_terms(|t| t.translate(shift))
    }

    /// Multiplication by `exp(2πi(α + ⟨β, z⟩))`.
    pub fn mul_phase(&self, alpha: f64, beta: &[f64]) -> Self {
        assert_eq!(beta.len(), self.dim, "phase dimension mismatch");
        let factor = Complex64::from_polar(1.0, 2.0 * PI * alpha);
        self.map_terms(|t| Term {
            poly: t.poly.scale(factor),
            width: t.width.clone(),
            freq: t.freq.iter().zip(beta).map(|(b, d)| b + d).collect(),
            center: t.center.clone(),
        })
    }

    /// The function `(x, y) ↦ f(x)` on `R^{dim + extra}`.
    pub fn lift(&self, extra: usize) -> Self {
        let pad = |v: &Vec<f64>| {
            let mut v = v.clone();
            v.resize(self.dim + extra, 0.0);
            v
        };
        let mut out = Self::zero(self.dim + extra);
        for t in &self.terms {
            out.push(Term {
                poly: t.poly.extend(extra),
                width: pad(&t.width),
                freq: pad(&t.freq),
                center: pad(&t.center),
            });
        }
        out
    }

    /// Random member of the family: a polynomial of degree at most `degree`
    /// with coefficients in the unit box, width in `width`, frequencies in
    /// `[−freq, freq]` and centers in `[−center, center]`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        dim: usize,
        degree: u32,
        width: (f64, f64),
        freq: f64,
        center: f64,
    ) -> Self {
        let mut poly = Polynomial::zero(dim);
        for exps in exponents_up_to(dim, degree) {
            let c = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            poly = poly.add(&Polynomial::monomial(exps, c));
        }
        let a = rng.gen_range(width.0..=width.1);
        let b = (0..dim).map(|_| rng.gen_range(-freq..=freq)).collect();
        let c = (0..dim).map(|_| rng.gen_range(-center..=center)).collect();
        Self::from_term(Term {
            poly,
            width: vec![a; dim],
            freq: b,
            center: c,
        })
    }
}

fn exponents_up_to(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    if dim == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for head in 0..=degree {
        for mut tail in exponents_up_to(dim - 1, degree - head) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample_points(dim: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        (0..25)
            .map(|_| (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect()
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = TestFunction::random(&mut rng, 2, 2, (0.5, 1.0), 0.5, 0.5);
        let h = 1e-5;
        for z in sample_points(2) {
            for j in 0..2 {
                let mut zp = z.clone();
                let mut zm = z.clone();
                zp[j] += h;
                zm[j] -= h;
                let fd = (f.eval(&zp) - f.eval(&zm)) / (2.0 * h);
                assert!((f.partial(j).eval(&z) - fd).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn translation_and_phase_are_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = TestFunction::random(&mut rng, 2, 2, (0.5, 1.0), 0.5, 0.5);
        let shift = [0.3, -1.1];
        let g = f.translate(&shift);
        let p = f.mul_phase(0.25, &[0.5, -0.75]);
        for z in sample_points(2) {
            let moved = [z[0] - shift[0], z[1] - shift[1]];
            assert!((g.eval(&z) - f.eval(&moved)).norm() < 1e-12);
            let ph = Complex64::from_polar(1.0, 2.0 * PI * (0.25 + 0.5 * z[0] - 0.75 * z[1]));
            assert!((p.eval(&z) - ph * f.eval(&z)).norm() < 1e-12);
        }
    }

    #[test]
    fn sums_merge_and_cancel() {
        let f = TestFunction::gaussian(1, 1.0, vec![0.0]).unwrap();
        assert_eq!(f.add(&f).terms().len(), 1);
        assert!(f.sub(&f).terms().is_empty());
    }

    #[test]
    fn lift_is_constant_in_new_variables() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = TestFunction::random(&mut rng, 1, 2, (0.5, 1.0), 0.5, 0.5);
        let lifted = f.lift(1);
        for y in [-3.0, 0.0, 5.5] {
            assert!((lifted.eval(&[0.4, y]) - f.eval(&[0.4])).norm() < 1e-14);
        }
        assert!(lifted.partial(1).terms().is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        let one = Polynomial::constant(1, Complex64::new(1.0, 0.0));
        assert!(TestFunction::new(one.clone(), 0.0, vec![0.0], vec![0.0]).is_err());
        assert!(TestFunction::new(one, 1.0, vec![0.0, 1.0], vec![0.0]).is_err());
    }

    #[test]
    fn exponent_enumeration_counts() {
        assert_eq!(exponents_up_to(2, 2).len(), 6);
        assert_eq!(exponents_up_to(3, 1).len(), 4);
    }
}
