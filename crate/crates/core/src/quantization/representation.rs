use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{GridFunction, GridSpec};
use super::operators::quant_op;
use super::testfn::TestFunction;
use super::HeisAlg3;
use crate::error::{HeisError, Result};
use crate::group::HeisGroupElement;
use crate::symplectic::SympVector;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn check_dim(g: &HeisGroupElement<f64>, dim: usize) -> Result<()> {
    if g.n() != dim {
        return Err(HeisError::DimensionMismatch {
            expected: dim,
            found: g.n(),
        });
    }
    Ok(())
}

/// `(S_ξ(x, y, t) f)(z) = e^{2πiξ[t − ⟨y, z − ½x⟩]} f(z − x)`.
pub fn rep_s(xi_mod: f64, g: &HeisGroupElement<f64>, f: &TestFunction) -> Result<TestFunction> {
    check_dim(g, f.dim())?;
    let (x, y) = (&g.v.x, &g.v.y);
    let alpha = xi_mod * (g.r + 0.5 * dot(y, x));
    let beta: Vec<f64> = y.iter().map(|v| -xi_mod * v).collect();
    Ok(f.translate(x).mul_phase(alpha, &beta))
}

/// [`rep_s`] on sampled data. The translation must be a lattice multiple.
pub fn rep_s_grid(
    xi_mod: f64,
    g: &HeisGroupElement<f64>,
    f: &GridFunction,
) -> Result<GridFunction> {
    let spec = *f.spec();
    check_dim(g, spec.n())?;
    let steps = spec.lattice_steps(&g.v.x)?;
    let shifted = f.shift_lattice(&steps)?;
    let (x, y) = (&g.v.x, &g.v.y);
    let half_yx = 0.5 * dot(y, x);
    Ok(shifted.map_indexed(|k, v| {
        let z = spec.point(k);
        v * Complex64::from_polar(1.0, 2.0 * PI * xi_mod * (g.r - dot(y, &z) + half_yx))
    }))
}

/// `ψ(x, y, t) = (−y, x, t)`.
pub fn twist_psi(g: &HeisGroupElement<f64>) -> HeisGroupElement<f64> {
    let v = SympVector {
        x: g.v.y.iter().map(|c| -c).collect(),
        y: g.v.x.clone(),
    };
    HeisGroupElement::new(v, g.r)
}

/// `(S₁(x', y', t') f)(z) = e^{2πi[t' + ⟨x', z − ½y'⟩]} f(z − y')`.
pub fn wallach_s1(g: &HeisGroupElement<f64>, f: &TestFunction) -> Result<TestFunction> {
    check_dim(g, f.dim())?;
    let (x, y) = (&g.v.x, &g.v.y);
    Ok(f.translate(y).mul_phase(g.r - 0.5 * dot(x, y), x))
}

/// `S̃₁ = S₁ ∘ ψ`.
pub fn twisted_s1(g: &HeisGroupElement<f64>, f: &TestFunction) -> Result<TestFunction> {
    wallach_s1(&twist_psi(g), f)
}

/// Sup over the grid points of `|D_u f − 𝒬(a) f|`, where `D_u` is the
/// central difference in `u` of `S̃₁(uξ, uη, us) f`.
pub fn infinitesimal_check(
    a: &HeisAlg3,
    f: &TestFunction,
    u: f64,
    points: &GridSpec,
) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(HeisError::Malformed(format!(
            "step must be positive, got {u}"
        )));
    }
    if points.n() != a.n() {
        return Err(HeisError::DimensionMismatch {
            expected: a.n(),
            found: points.n(),
        });
    }
    let at = |step: f64| {
        let v = SympVector {
            x: a.xi.iter().map(|c| c * step).collect(),
            y: a.eta.iter().map(|c| c * step).collect(),
        };
        twisted_s1(&HeisGroupElement::new(v, a.s * step), f)
    };
    let fwd = at(u)?;
    let bwd = at(-u)?;
    let q = quant_op(a, f)?;
    Ok(points.points().fold(0.0, |m, z| {
        let diff = (fwd.eval(&z) - bwd.eval(&z)) / (2.0 * u);
        m.max((diff - q.eval(&z)).norm())
    }))
}

/// `log(d₁/d₂) / log(u₁/u₂)`.
pub fn observed_order(d1: f64, u1: f64, d2: f64, u2: f64) -> f64 {
    (d1 / d2).ln() / (u1 / u2).ln()
}
