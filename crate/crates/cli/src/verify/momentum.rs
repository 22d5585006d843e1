//! Momentum maps of translations and of the Heisenberg action.

use heis_core::group::coadjoint;
use heis_core::momentum::{
    affine_cocycle, affine_momentum, cocycle_at, heis_momentum, momentum_preimage,
};
use heis_core::orbits::{classify_dual, OrbitKind};
use heis_core::{omega, random, Scalar};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{CheckFn, CheckRecord, Ctx, Tally};
use crate::json;

/// Number of base points for the momentum-image check.
pub fn image_instances(trials: usize) -> usize {
    trials.div_ceil(10)
}

pub fn checks<S: Scalar>() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("affine_cocycle", affine_cocycle_check::<S>),
        ("affine_shift_identity", affine_shift_identity::<S>),
        ("heis_equivariance", heis_equivariance::<S>),
        ("momentum_preimage", preimage_round_trip::<S>),
        ("momentum_image_modulus", momentum_image_modulus::<S>),
    ]
}

fn tally(name: &str, ctx: &Ctx) -> Tally {
    Tally::new(name, ctx.algebra_tol(), ctx.mode)
}

/// `{J^y, J^z} − J^{[y,z]} = ω(y, z)` at three base points.
pub fn affine_cocycle_check<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("affine_cocycle", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let y = random::vector::<S, _>(rng, ctx.n);
        let z = random::vector::<S, _>(rng, ctx.n);
        let sigma = affine_cocycle(&y, &z).expect("equal dimensions");
        let expected = omega(&y, &z).expect("equal dimensions");
        let mut holds = sigma.approx_eq(&expected, tol);
        let mut defect = sigma.abs_diff(&expected);
        let mut values = Vec::new();
        for _ in 0..3 {
            let base = random::vector::<S, _>(rng, ctx.n);
            let at = cocycle_at(&y, &z, &base).expect("equal dimensions");
            holds &= at.approx_eq(&expected, tol);
            defect = defect.max(at.abs_diff(&expected));
            values.push((base, at));
        }
        t.record(holds, defect, || {
            json!({"y": json::vector(&y), "z": json::vector(&z), "omega": json::scalar(&expected),
                   "bracket_at": values.iter().map(|(b, v)| json!({"base": json::vector(b), "value": json::scalar(v)})).collect::<Vec<_>>()})
        });
    }
    t.finish()
}

/// `J(v + a)(x) = J(v)(x) + ω(x, a)`.
pub fn affine_shift_identity<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("affine_shift_identity", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let v = random::vector::<S, _>(rng, ctx.n);
        let a = random::vector::<S, _>(rng, ctx.n);
        let x = random::vector::<S, _>(rng, ctx.n);
        let lhs = affine_momentum(&(&v + &a))
            .eval(&x)
            .expect("equal dimensions");
        let rhs = affine_momentum(&v).eval(&x).expect("equal dimensions")
            + omega(&x, &a).expect("equal dimensions");
        t.record(lhs.approx_eq(&rhs, tol), lhs.abs_diff(&rhs), || {
            json!({"v": json::vector(&v), "a": json::vector(&a), "x": json::vector(&x),
                   "lhs": json::scalar(&lhs), "rhs": json::scalar(&rhs)})
        });
    }
    t.finish()
}

/// `J(g · v) = Ad*_{g⁻¹} J(v)` for the action `v ↦ v + g.v`.
pub fn heis_equivariance<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("heis_equivariance", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let v = random::vector::<S, _>(rng, ctx.n);
        let g = random::group_element::<S, _>(rng, ctx.n);
        let lhs = heis_momentum(&(&v + &g.v));
        let rhs = coadjoint(&g, &heis_momentum(&v)).expect("equal dimensions");
        let defect = lhs
            .lambda
            .max_abs_diff(&rhs.lambda)
            .max(lhs.mu.abs_diff(&rhs.mu));
        t.record(lhs.approx_eq(&rhs, tol), defect, || {
            json!({"v": json::vector(&v), "g": json::group_element(&g),
                   "lhs": json::dual_element(&lhs), "rhs": json::dual_element(&rhs)})
        });
    }
    t.finish()
}

pub fn preimage_round_trip<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("momentum_preimage", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let v = random::vector::<S, _>(rng, ctx.n);
        let back = momentum_preimage(&heis_momentum(&v)).expect("mu is one");
        t.record(
            back.approx_eq(&v, tol),
            back.max_abs_diff(&v),
            || json!({"v": json::vector(&v), "preimage": json::vector(&back)}),
        );
    }
    t.finish()
}

/// The image of `J` is the generic orbit of modulus 1.
pub fn momentum_image_modulus<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("momentum_image_modulus", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..image_instances(ctx.trials) {
        let v = random::vector::<S, _>(rng, ctx.n);
        let f = heis_momentum(&v);
        let desc = classify_dual(&f);
        let verified = desc.verify(&f, tol).unwrap_or(false);
        let holds =
            desc.kind == OrbitKind::Generic && desc.mu.approx_eq(&S::one(), tol) && verified;
        t.record(holds, desc.mu.abs_diff(&S::one()), || {
            json!({"v": json::vector(&v), "kind": desc.kind.as_str(), "mu": json::scalar(&desc.mu), "verified": verified})
        });
    }
    t.finish()
}
