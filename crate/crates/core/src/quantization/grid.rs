use num_complex::Complex64;

use super::testfn::TestFunction;
use crate::error::{HeisError, Result};

/// Smallest grid accepted by finite-difference operators.
pub const MIN_FD_SAMPLES: usize = 16;

/// Uniform grid on `[−L, L)^n` with `N` samples per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    half_width: f64,
    samples: usize,
}

impl GridSpec {
    pub fn new(n: usize, half_width: f64, samples: usize) -> Result<Self> {
        if n == 0 {
            return Err(HeisError::ZeroDimension);
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(HeisError::InvalidGrid(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if samples < 2 || !samples.is_power_of_two() {
            return Err(HeisError::InvalidGrid(format!(
                "samples per axis must be a power of two, got {samples}"
            )));
        }
        if samples.checked_pow(n as u32).is_none() {
            return Err(HeisError::InvalidGrid("grid too large".into()));
        }
        Ok(Self {
            n,
            half_width,
            samples,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.samples as f64
    }

    pub fn len(&self) -> usize {
        self.samples.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.spacing()
    }

    /// Multi-index of a flat index; axis 0 varies slowest.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for j in (0..self.n).rev() {
            idx[j] = flat % self.samples;
            flat /= self.samples;
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .into_iter()
            .map(|k| self.coordinate(k))
            .collect()
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.samples.pow((self.n - 1 - axis) as u32)
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// Integer lattice steps for a shift, or an error if it is off-lattice.
    pub fn lattice_steps(&self, shift: &[f64]) -> Result<Vec<i64>> {
        if shift.len() != self.n {
            return Err(HeisError::DimensionMismatch {
                expected: self.n,
                found: shift.len(),
            });
        }
        let h = self.spacing();
        shift
            .iter()
            .map(|&x| {
                let k = (x / h).round();
                if (x / h - k).abs() > 1e-9 || !k.is_finite() {
                    Err(HeisError::OffLattice {
                        value: x,
                        spacing: h,
                    })
                } else {
                    Ok(k as i64)
                }
            })
            .collect()
    }
}

/// Samples of a complex function on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(HeisError::DimensionMismatch {
                expected: spec.len(),
                found: values.len(),
            });
        }
        Ok(Self { spec, values })
    }

    pub fn from_fn(spec: GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = (0..spec.len()).map(|k| f(&spec.point(k))).collect();
        Self { spec, values }
    }

    pub fn sample(spec: GridSpec, f: &TestFunction) -> Result<Self> {
        if f.dim() != spec.n() {
            return Err(HeisError::DimensionMismatch {
                expected: spec.n(),
                found: f.dim(),
            });
        }
        Ok(Self::from_fn(spec, |z| f.eval(z)))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn map_indexed(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        Self {
            spec: self.spec,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(k, &v)| f(k, v))
                .collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(HeisError::GridMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.map_indexed(|k, v| v + other.values[k]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.map_indexed(|k, v| v - other.values[k]))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_indexed(|_, v| v * factor)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    fn inner(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.values.iter().zip(&other.values) {
            acc += a * b.conj();
        }
        acc * self.spec.spacing().powi(self.spec.n() as i32)
    }

    /// Fourth-order central difference along `axis`, with zeros outside the
    /// grid.
    pub fn partial(&self, axis: usize) -> Result<Self> {
        if self.spec.samples() < MIN_FD_SAMPLES {
            return Err(HeisError::InvalidGrid(format!(
                "finite differences need at least {MIN_FD_SAMPLES} samples per axis, got {}",
                self.spec.samples()
            )));
        }
        if axis >= self.spec.n() {
            return Err(HeisError::DimensionMismatch {
                expected: self.spec.n(),
                found: axis + 1,
            });
        }
        let stride = self.spec.stride(axis);
        let n = self.spec.samples();
        let h = self.spec.spacing();
        let at = |k: usize, offset: i64| -> Complex64 {
            let pos = ((k / stride) % n) as i64 + offset;
            if pos < 0 || pos >= n as i64 {
                Complex64::new(0.0, 0.0)
            } else {
                self.values[(k as i64 + offset * stride as i64) as usize]
            }
        };
        Ok(self.map_indexed(|k, _| {
            (at(k, -2) - at(k, -1) * 8.0 + at(k, 1) * 8.0 - at(k, 2)) / (12.0 * h)
        }))
    }

    /// `z ↦ f(z − k·h)` for integer steps `k`, with zeros shifted in.
    pub fn shift_lattice(&self, steps: &[i64]) -> Result<Self> {
        if steps.len() != self.spec.n() {
            return Err(HeisError::DimensionMismatch {
                expected: self.spec.n(),
                found: steps.len(),
            });
        }
        let n = self.spec.samples() as i64;
        Ok(self.map_indexed(|k, _| {
            let idx = self.spec.multi_index(k);
            let mut src = 0usize;
            for (j, (&i, &s)) in idx.iter().zip(steps).enumerate() {
                let p = i as i64 - s;
                if p < 0 || p >= n {
                    return Complex64::new(0.0, 0.0);
                }
                src += p as usize * self.spec.stride(j);
            }
            self.values[src]
        }))
    }
}

/// `Σ f(z_k)·conj(g(z_k))·hⁿ`, summed in index order.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.check_same(g)?;
    Ok(f.inner(g))
}
