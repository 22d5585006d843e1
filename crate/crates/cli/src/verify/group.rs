//! Group law, matrix model, bracket, exponential, adjoint and coadjoint.

use heis_core::group::{
    ad, bracket, coadjoint, exp_alg, rho, rho_alg, HeisAlgElement, HeisDualElement,
    HeisGroupElement,
};
use heis_core::{random, Matrix, Scalar};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{CheckFn, CheckRecord, Ctx, Tally};
use crate::json;

pub fn checks<S: Scalar>() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("group_associativity", group_associativity::<S>),
        ("group_inverse", group_inverse::<S>),
        ("rho_homomorphism", rho_homomorphism::<S>),
        ("bracket_isomorphism", bracket_isomorphism::<S>),
        ("rho_alg_nilpotent", rho_alg_nilpotent::<S>),
        ("exp_consistency", exp_consistency::<S>),
        ("bracket_laws", bracket_laws::<S>),
        ("ad_conjugation", ad_conjugation::<S>),
        ("coadjoint_duality", coadjoint_duality::<S>),
        ("coadjoint_action", coadjoint_action::<S>),
        ("mu_invariance", mu_invariance::<S>),
    ]
}

fn group_defect<S: Scalar>(a: &HeisGroupElement<S>, b: &HeisGroupElement<S>) -> f64 {
    a.v.max_abs_diff(&b.v).max(a.r.abs_diff(&b.r))
}

fn alg_defect<S: Scalar>(a: &HeisAlgElement<S>, b: &HeisAlgElement<S>) -> f64 {
    a.x.max_abs_diff(&b.x).max(a.xi.abs_diff(&b.xi))
}

fn dual_defect<S: Scalar>(a: &HeisDualElement<S>, b: &HeisDualElement<S>) -> f64 {
    a.lambda.max_abs_diff(&b.lambda).max(a.mu.abs_diff(&b.mu))
}

fn tally(name: &str, ctx: &Ctx) -> Tally {
    Tally::new(name, ctx.algebra_tol(), ctx.mode)
}

pub fn group_associativity<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("group_associativity", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let g1 = random::group_element::<S, _>(rng, ctx.n);
        let g2 = random::group_element::<S, _>(rng, ctx.n);
        let g3 = random::group_element::<S, _>(rng, ctx.n);
        let lhs = g1
            .mul(&g2)
            .and_then(|p| p.mul(&g3))
            .expect("equal dimensions");
        let rhs = g2
            .mul(&g3)
            .and_then(|p| g1.mul(&p))
            .expect("equal dimensions");
        t.record(lhs.approx_eq(&rhs, tol), group_defect(&lhs, &rhs), || {
            json!({"g1": json::group_element(&g1), "g2": json::group_element(&g2), "g3": json::group_element(&g3),
                   "lhs": json::group_element(&lhs), "rhs": json::group_element(&rhs)})
        });
    }
    t.finish()
}

pub fn group_inverse<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("group_inverse", ctx);
    let tol = ctx.algebra_tol();
    let id = HeisGroupElement::<S>::identity(ctx.n);
    for _ in 0..ctx.trials {
        let g = random::group_element::<S, _>(rng, ctx.n);
        let left = g.inverse().mul(&g).expect("equal dimensions");
        let right = g.mul(&g.inverse()).expect("equal dimensions");
        let unit = g.mul(&id).expect("equal dimensions");
        let holds =
            left.approx_eq(&id, tol) && right.approx_eq(&id, tol) && unit.approx_eq(&g, tol);
        let defect = group_defect(&left, &id)
            .max(group_defect(&right, &id))
            .max(group_defect(&unit, &g));
        t.record(
            holds,
            defect,
            || json!({"g": json::group_element(&g), "g_inv_g": json::group_element(&left)}),
        );
    }
    t.finish()
}

pub fn rho_homomorphism<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("rho_homomorphism", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let g1 = random::group_element::<S, _>(rng, ctx.n);
        let g2 = random::group_element::<S, _>(rng, ctx.n);
        let lhs = rho(&g1.mul(&g2).expect("equal dimensions")).matrix;
        let rhs = &rho(&g1).matrix * &rho(&g2).matrix;
        t.record(lhs.approx_eq(&rhs, tol), lhs.max_abs_diff(&rhs), || {
            json!({"g1": json::group_element(&g1), "g2": json::group_element(&g2),
                   "lhs": json::matrix(&lhs), "rhs": json::matrix(&rhs)})
        });
    }
    t.finish()
}

pub fn bracket_isomorphism<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("bracket_isomorphism", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let a = random::alg_element::<S, _>(rng, ctx.n);
        let b = random::alg_element::<S, _>(rng, ctx.n);
        let lhs = rho_alg(&a).matrix.commutator(&rho_alg(&b).matrix);
        let rhs = rho_alg(&bracket(&a, &b).expect("equal dimensions")).matrix;
        t.record(lhs.approx_eq(&rhs, tol), lhs.max_abs_diff(&rhs), || {
            json!({"a": json::alg_element(&a), "b": json::alg_element(&b),
                   "lhs": json::matrix(&lhs), "rhs": json::matrix(&rhs)})
        });
    }
    t.finish()
}

pub fn rho_alg_nilpotent<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("rho_alg_nilpotent", ctx);
    let tol = ctx.algebra_tol();
    let size = 2 * ctx.n + 2;
    let zero = Matrix::<S>::zeros(size, size);
    for _ in 0..ctx.trials {
        let a = random::alg_element::<S, _>(rng, ctx.n);
        let cube = rho_alg(&a).matrix.pow(3);
        t.record(
            cube.approx_eq(&zero, tol),
            cube.max_abs_diff(&zero),
            || json!({"a": json::alg_element(&a), "cube": json::matrix(&cube)}),
        );
    }
    t.finish()
}

/// `exp(ρ'(X)) = ρ(exp X)`: a truncated series in exact mode, scaling and
/// squaring in float mode.
pub fn exp_consistency<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("exp_consistency", ctx);
    let tol = ctx.algebra_tol();
    let size = 2 * ctx.n + 2;
    for _ in 0..ctx.trials {
        let a = random::alg_element::<S, _>(rng, ctx.n);
        let x = rho_alg(&a).matrix;
        let rhs = rho(&exp_alg(&a)).matrix;
        let to_f64 = |m: &Matrix<S>| Matrix::from_fn(size, size, |i, j| m[(i, j)].to_f64());
        let (holds, defect, lhs) = if S::EXACT {
            let lhs = &(&Matrix::identity(size) + &x) + &x.pow(2).scale(&S::half());
            (
                lhs.approx_eq(&rhs, tol),
                lhs.max_abs_diff(&rhs),
                to_f64(&lhs),
            )
        } else {
            let lhs = to_f64(&x).expm();
            let defect = lhs.max_abs_diff(&to_f64(&rhs));
            (defect <= tol, defect, lhs)
        };
        t.record(holds, defect, || {
            json!({"a": json::alg_element(&a), "lhs": json::matrix(&lhs), "rhs": json::matrix(&rhs)})
        });
    }
    t.finish()
}

/// Antisymmetry and the Jacobi identity.
pub fn bracket_laws<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("bracket_laws", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let a = random::alg_element::<S, _>(rng, ctx.n);
        let b = random::alg_element::<S, _>(rng, ctx.n);
        let c = random::alg_element::<S, _>(rng, ctx.n);
        let ab = bracket(&a, &b).expect("equal dimensions");
        let ba = bracket(&b, &a).expect("equal dimensions").scale(&-S::one());
        let br =
            |p: &HeisAlgElement<S>, q: &HeisAlgElement<S>| bracket(p, q).expect("equal dimensions");
        let jacobi = br(&a, &br(&b, &c))
            .checked_add(&br(&b, &br(&c, &a)))
            .and_then(|s| s.checked_add(&br(&c, &ab)))
            .expect("equal dimensions");
        let zero = HeisAlgElement::<S>::zero(ctx.n);
        let holds = ab.approx_eq(&ba, tol) && jacobi.approx_eq(&zero, tol);
        let defect = alg_defect(&ab, &ba).max(alg_defect(&jacobi, &zero));
        t.record(holds, defect, || {
            json!({"a": json::alg_element(&a), "b": json::alg_element(&b),
                   "ab": json::alg_element(&ab), "minus_ba": json::alg_element(&ba)})
        });
    }
    t.finish()
}

pub fn ad_conjugation<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("ad_conjugation", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let g = random::group_element::<S, _>(rng, ctx.n);
        let y = random::alg_element::<S, _>(rng, ctx.n);
        let lhs = rho_alg(&ad(&g, &y).expect("equal dimensions")).matrix;
        let rhs = &(&rho(&g).matrix * &rho_alg(&y).matrix) * &rho(&g.inverse()).matrix;
        t.record(lhs.approx_eq(&rhs, tol), lhs.max_abs_diff(&rhs), || {
            json!({"g": json::group_element(&g), "y": json::alg_element(&y),
                   "lhs": json::matrix(&lhs), "rhs": json::matrix(&rhs)})
        });
    }
    t.finish()
}

/// `(g • f)(Y) = f(Ad_{g⁻¹} Y)`.
pub fn coadjoint_duality<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("coadjoint_duality", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let g = random::group_element::<S, _>(rng, ctx.n);
        let f = random::dual_element::<S, _>(rng, ctx.n);
        let y = random::alg_element::<S, _>(rng, ctx.n);
        let lhs = coadjoint(&g, &f)
            .and_then(|h| h.eval(&y))
            .expect("equal dimensions");
        let rhs = ad(&g.inverse(), &y)
            .and_then(|z| f.eval(&z))
            .expect("equal dimensions");
        t.record(lhs.approx_eq(&rhs, tol), lhs.abs_diff(&rhs), || {
            json!({"g": json::group_element(&g), "f": json::dual_element(&f), "y": json::alg_element(&y),
                   "lhs": json::scalar(&lhs), "rhs": json::scalar(&rhs)})
        });
    }
    t.finish()
}

pub fn coadjoint_action<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("coadjoint_action", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let g1 = random::group_element::<S, _>(rng, ctx.n);
        let g2 = random::group_element::<S, _>(rng, ctx.n);
        let f = random::dual_element::<S, _>(rng, ctx.n);
        let lhs = coadjoint(&g2, &f)
            .and_then(|h| coadjoint(&g1, &h))
            .expect("equal dimensions");
        let rhs = g1
            .mul(&g2)
            .and_then(|g| coadjoint(&g, &f))
            .expect("equal dimensions");
        t.record(lhs.approx_eq(&rhs, tol), dual_defect(&lhs, &rhs), || {
            json!({"g1": json::group_element(&g1), "g2": json::group_element(&g2), "f": json::dual_element(&f),
                   "lhs": json::dual_element(&lhs), "rhs": json::dual_element(&rhs)})
        });
    }
    t.finish()
}

pub fn mu_invariance<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("mu_invariance", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let g = random::group_element::<S, _>(rng, ctx.n);
        let f = random::dual_element::<S, _>(rng, ctx.n);
        let moved = coadjoint(&g, &f).expect("equal dimensions");
        t.record(moved.mu.approx_eq(&f.mu, tol), moved.mu.abs_diff(&f.mu), || {
            json!({"g": json::group_element(&g), "f": json::dual_element(&f), "moved": json::dual_element(&moved)})
        });
    }
    t.finish()
}
