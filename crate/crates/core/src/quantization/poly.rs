use std::collections::BTreeMap;

use num_complex::Complex64;

/// Multivariate polynomial with complex coefficients, keyed by exponent
/// vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn monomial(exponents: Vec<u32>, c: Complex64) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// `c₀ + Σ c_j z_j`.
    pub fn affine(c0: Complex64, linear: &[Complex64]) -> Self {
        let dim = linear.len();
        let mut p = Self::constant(dim, c0);
        for (j, c) in linear.iter().enumerate() {
            let mut e = vec![0; dim];
            e[j] = 1;
            p.add_term(e, *c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: Complex64) {
        debug_assert_eq!(exponents.len(), self.dim);
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self
            .terms
            .entry(exponents.clone())
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        let mut out = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂p/∂z_j`.
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[j] -= 1;
            out.add_term(d, c * e[j] as f64);
        }
        out
    }

    /// `z ↦ p(z − shift)`.
    pub fn translate(&self, shift: &[f64]) -> Self {
        assert_eq!(shift.len(), self.dim, "shift dimension mismatch");
        let one = Complex64::new(1.0, 0.0);
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut acc = Self::constant(self.dim, *c);
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut lin = vec![Complex64::new(0.0, 0.0); self.dim];
                lin[j] = one;
                let factor = Self::affine(Complex64::new(-shift[j], 0.0), &lin);
                for _ in 0..k {
                    acc = acc.mul(&factor);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Embeds into `dim + extra` variables; the new variables do not appear.
    pub fn extend(&self, extra: usize) -> Self {
        let mut out = Self::zero(self.dim + extra);
        for (e, c) in &self.terms {
            let mut padded = e.clone();
            padded.resize(self.dim + extra, 0);
            out.add_term(padded, *c);
        }
        out
    }

    pub fn eval(&self, z: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(*c, |acc, (&k, &zj)| acc * zj.powi(k as i32))
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn translate_matches_pointwise_shift() {
        let p = Polynomial::monomial(vec![2, 1], c(1.5, -0.5)).add(&Polynomial::affine(
            c(0.3, 0.0),
            &[c(0.0, 2.0), c(-1.0, 0.0)],
        ));
        let shift = [0.7, -1.3];
        let q = p.translate(&shift);
        for z in [[0.0, 0.0], [1.2, -0.4], [-2.0, 3.0]] {
            let expected = p.eval(&[z[0] - shift[0], z[1] - shift[1]]);
            assert!((q.eval(&z) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_and_product_rule() {
        let p = Polynomial::monomial(vec![3, 0], c(2.0, 1.0));
        let q = Polynomial::affine(c(1.0, 0.0), &[c(0.0, 0.0), c(4.0, 0.0)]);
        let lhs = p.mul(&q).partial(0);
        let rhs = p.partial(0).mul(&q).add(&p.mul(&q.partial(0)));
        assert_eq!(lhs, rhs);
        assert_eq!(p.partial(1), Polynomial::zero(2));
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Polynomial::monomial(vec![1], c(1.0, 0.0));
        assert!(p.add(&p.scale(c(-1.0, 0.0))).is_zero());
    }
}
