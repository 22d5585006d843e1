//! `L_{w,f}` operators, normal-form reduction and orbit classification.

use heis_core::group::{coadjoint, rho_alg, EmbeddedMatrix, HeisDualElement, HeisGroupElement};
use heis_core::orbits::{
    classify_dual, conjugate_l, conjugation_invariance_check, decompose_ghat, in_isotropy,
    l_operator, l_operator_outer, orbit_pairing, reduce_tuple, restrict_functional, OrbitKind,
    TupleRep,
};
use heis_core::{random, Scalar};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{CheckFn, CheckRecord, Ctx, Tally};
use crate::json;

/// Number of instances for the classification checks.
pub fn classification_instances(trials: usize) -> usize {
    trials.div_ceil(2)
}

pub fn checks<S: Scalar>() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("l_operator_closed_form", l_operator_closed_form::<S>),
        ("ghat_round_trip", ghat_round_trip::<S>),
        ("l_conjugation", l_conjugation::<S>),
        ("trace_pairing_vanishes", trace_pairing_vanishes::<S>),
        ("normal_form_invariance", normal_form_invariance::<S>),
        ("reduction_normal_form", reduction_normal_form::<S>),
        (
            "reduction_modulus_invariance",
            reduction_modulus_invariance::<S>,
        ),
        ("classify_normalizer", classify_normalizer::<S>),
        ("isotropy_is_central", isotropy_is_central::<S>),
        ("orbit_form_scaling", orbit_form_scaling::<S>),
    ]
}

fn tally(name: &str, ctx: &Ctx) -> Tally {
    Tally::new(name, ctx.algebra_tol(), ctx.mode)
}

/// Closed-form `L_{w,f}` against `w ⊗ f* + f ⊗ w*`.
pub fn l_operator_closed_form<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("l_operator_closed_form", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let w = random::ext_vector::<S, _>(rng, ctx.n);
        let closed = l_operator(&w).matrix;
        let outer = l_operator_outer(&w).expect("valid dimension").matrix;
        let in_ghat = l_operator(&w).in_ghat(tol);
        t.record(closed.approx_eq(&outer, tol) && in_ghat, closed.max_abs_diff(&outer), || {
            json!({"w": json::ext_vector(&w), "closed_form": json::matrix(&closed), "outer": json::matrix(&outer),
                   "in_ghat": in_ghat})
        });
    }
    t.finish()
}

/// `w ↦ L_w ↦ w` and `X ↦ w ↦ L_w = X` on `ĝ`.
pub fn ghat_round_trip<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("ghat_round_trip", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let w = random::ext_vector::<S, _>(rng, ctx.n);
        let back = decompose_ghat(&l_operator(&w)).expect("image lies in ghat");
        let x: EmbeddedMatrix<S> = random::ghat_element(rng, ctx.n);
        let rebuilt = l_operator(&decompose_ghat(&x).expect("sampled from ghat"));
        let wd = back.components();
        let w0 = w.components();
        let vec_defect = wd
            .iter()
            .zip(&w0)
            .fold(0.0, |m: f64, (a, b)| m.max(a.abs_diff(b)));
        let holds = wd.iter().zip(&w0).all(|(a, b)| a.approx_eq(b, tol))
            && rebuilt.matrix.approx_eq(&x.matrix, tol);
        t.record(
            holds,
            vec_defect.max(rebuilt.matrix.max_abs_diff(&x.matrix)),
            || {
                json!({"w": json::ext_vector(&w), "w_back": json::ext_vector(&back),
                   "x": json::matrix(&x.matrix), "rebuilt": json::matrix(&rebuilt.matrix)})
            },
        );
    }
    t.finish()
}

/// `P L_{w,f} P⁻¹ = L_{Pw, Pf}` for `P ∈ Ĝ`.
pub fn l_conjugation<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("l_conjugation", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let p: EmbeddedMatrix<S> = random::ghat_group_element(rng, ctx.n);
        let w = random::ext_vector::<S, _>(rng, ctx.n);
        match conjugate_l(&p, &w) {
            Ok(id) => t.record(id.holds(tol), id.defect(), || {
                json!({"p": json::matrix(&p.matrix), "w": json::ext_vector(&w),
                       "lhs": json::matrix(&id.lhs), "rhs": json::matrix(&id.rhs)})
            }),
            Err(e) => t.record(false, f64::INFINITY, || {
                json!({"p": json::matrix(&p.matrix), "w": json::ext_vector(&w), "error": e.to_string()})
            }),
        }
    }
    t.finish()
}

/// `tr(XZ) = 0` for `X ∈ ĝ`, `Z ∈ ĝ_{f_{n+1}}`, hence the restricted
/// functional of any `X ∈ ĝ` is zero.
pub fn trace_pairing_vanishes<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("trace_pairing_vanishes", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let x: EmbeddedMatrix<S> = random::ghat_element(rng, ctx.n);
        let z = rho_alg(&random::alg_element::<S, _>(rng, ctx.n));
        let pairing = (&x.matrix * &z.matrix).trace();
        let restricted = restrict_functional(&x);
        let zero = HeisDualElement::<S>::h_mu(ctx.n, S::zero());
        let holds = pairing.approx_zero(tol) && restricted.approx_eq(&zero, tol);
        let defect = pairing
            .to_f64()
            .abs()
            .max(restricted.lambda.max_abs_diff(&zero.lambda))
            .max(restricted.mu.to_f64().abs());
        t.record(holds, defect, || {
            json!({"x": json::matrix(&x.matrix), "z": json::matrix(&z.matrix), "trace": json::scalar(&pairing),
                   "restricted": json::dual_element(&restricted)})
        });
    }
    t.finish()
}

/// `P (ξ E_{2n+1,0}) P⁻¹ = ξ E_{2n+1,0}` for `P ∈ Ĝ_{f_{n+1}}`.
pub fn normal_form_invariance<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("normal_form_invariance", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let p: EmbeddedMatrix<S> = random::stabilizer_element(rng, ctx.n);
        let xi: S = random::scalar(rng);
        let id = conjugation_invariance_check(&p, xi.clone()).expect("sampled from the stabilizer");
        t.record(id.holds(tol), id.defect(), || {
            json!({"p": json::matrix(&p.matrix), "xi": json::scalar(&xi),
                   "lhs": json::matrix(&id.lhs), "rhs": json::matrix(&id.rhs)})
        });
    }
    t.finish()
}

/// `Y + L_{w,f}` keeps only the `[2n+1, 0]` entry, which equals the modulus.
pub fn reduction_normal_form<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("reduction_normal_form", ctx);
    let tol = ctx.algebra_tol();
    let corner = (2 * ctx.n + 1, 0);
    for _ in 0..ctx.trials {
        let params = random::ghat_params::<S, _>(rng, ctx.n);
        let red = reduce_tuple(&TupleRep::from_params(&params)).expect("sampled from ghat");
        let support = red.residual.matrix.support(tol);
        let stray = support
            .iter()
            .filter(|&&ij| ij != corner)
            .fold(0.0, |m: f64, &(i, j)| {
                m.max(red.residual.matrix[(i, j)].to_f64().abs())
            });
        let entry = &red.residual.matrix[corner];
        let holds = support.iter().all(|&ij| ij == corner)
            && entry.approx_eq(&params.xi, tol)
            && red.descriptor.modulus.approx_eq(&params.xi, tol);
        t.record(holds, stray.max(entry.abs_diff(&params.xi)), || {
            json!({"zeta": json::scalar(&params.zeta), "d": json::vector(&params.d), "xi": json::scalar(&params.xi),
                   "w": json::ext_vector(&red.w), "residual": json::matrix(&red.residual.matrix)})
        });
    }
    t.finish()
}

/// The modulus survives adding `L_{w',f}` with `w'` free of `f_{n+1}`, and
/// conjugating the reduced form by `Ĝ_{f_{n+1}}`.
pub fn reduction_modulus_invariance<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("reduction_modulus_invariance", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..ctx.trials {
        let params = random::ghat_params::<S, _>(rng, ctx.n);
        let y = TupleRep::from_params(&params).y;
        let mut shift = random::ext_vector::<S, _>(rng, ctx.n);
        shift.top = S::zero();
        let shifted =
            reduce_tuple(&TupleRep::new(y.add(&l_operator(&shift)))).expect("ghat is closed");
        let reduced = reduce_tuple(&TupleRep::new(y)).expect("sampled from ghat");
        let p: EmbeddedMatrix<S> = random::stabilizer_element(rng, ctx.n);
        let moved = p.conjugate(&reduced.residual).expect("invertible");
        let again = reduce_tuple(&TupleRep::new(moved)).expect("normal form lies in ghat");
        let m0 = &params.xi;
        let holds = shifted.descriptor.modulus.approx_eq(m0, tol)
            && again.descriptor.modulus.approx_eq(m0, tol);
        let defect = shifted
            .descriptor
            .modulus
            .abs_diff(m0)
            .max(again.descriptor.modulus.abs_diff(m0));
        t.record(holds, defect, || {
            json!({"xi": json::scalar(m0), "shift": json::ext_vector(&shift), "p": json::matrix(&p.matrix),
                   "shifted_modulus": json::scalar(&shifted.descriptor.modulus),
                   "conjugated_modulus": json::scalar(&again.descriptor.modulus)})
        });
    }
    t.finish()
}

fn generic_dual<S: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> HeisDualElement<S> {
    let mut f = random::dual_element::<S, _>(rng, n);
    f.mu = random::nonzero_scalar(rng);
    f
}

/// `coadjoint(normalizer, f) = h_μ` for `μ ≠ 0`.
pub fn classify_normalizer<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("classify_normalizer", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..classification_instances(ctx.trials) {
        let f = generic_dual::<S>(rng, ctx.n);
        let desc = classify_dual(&f);
        let target = HeisDualElement::h_mu(ctx.n, f.mu.clone());
        let moved = desc
            .normalizer
            .as_ref()
            .map(|g| coadjoint(g, &f).expect("equal dimensions"));
        let (holds, defect) = match &moved {
            Some(m) => (
                desc.kind == OrbitKind::Generic
                    && m.approx_eq(&target, tol)
                    && desc.representative == target,
                m.lambda
                    .max_abs_diff(&target.lambda)
                    .max(m.mu.abs_diff(&target.mu)),
            ),
            None => (false, f64::INFINITY),
        };
        t.record(holds, defect, || {
            json!({"f": json::dual_element(&f), "normalizer": desc.normalizer.as_ref().map(json::group_element),
                   "moved": moved.as_ref().map(json::dual_element)})
        });
    }
    t.finish()
}

/// No translation `(x, 0)` with `x ≠ 0` fixes `h_μ`, and every central
/// element does.
pub fn isotropy_is_central<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("isotropy_is_central", ctx);
    let tol = ctx.algebra_tol();
    for _ in 0..classification_instances(ctx.trials) {
        let mu: S = random::nonzero_scalar(rng);
        let h = HeisDualElement::h_mu(ctx.n, mu.clone());
        let x = random::nonzero_vector::<S, _>(rng, ctx.n);
        let g = HeisGroupElement::new(x.clone(), random::scalar(rng));
        let fixes = in_isotropy(&g, &h, tol).expect("equal dimensions");
        let central = HeisGroupElement::central(ctx.n, random::scalar(rng));
        let central_fixes = in_isotropy(&central, &h, tol).expect("equal dimensions");
        let moved = coadjoint(&g, &h).expect("equal dimensions");
        let shift = moved.lambda.max_abs_diff(&h.lambda);
        t.record(!fixes && central_fixes, if fixes { 1.0 } else { 0.0 }, || {
            json!({"mu": json::scalar(&mu), "x": json::vector(&x), "shift": shift, "central_fixes": central_fixes})
        });
    }
    t.finish()
}

/// `h_ξ([a, b]) = ξ · h_1([a, b])`.
pub fn orbit_form_scaling<S: Scalar>(rng: &mut ChaCha8Rng, ctx: &Ctx) -> CheckRecord {
    let mut t = tally("orbit_form_scaling", ctx);
    let tol = ctx.algebra_tol();
    let one = HeisDualElement::<S>::h_mu(ctx.n, S::one());
    for _ in 0..classification_instances(ctx.trials) {
        let xi: S = random::nonzero_scalar(rng);
        let a = random::alg_element::<S, _>(rng, ctx.n);
        let b = random::alg_element::<S, _>(rng, ctx.n);
        let lhs = orbit_pairing(&HeisDualElement::h_mu(ctx.n, xi.clone()), &a, &b)
            .expect("equal dimensions");
        let rhs = xi.clone() * orbit_pairing(&one, &a, &b).expect("equal dimensions");
        t.record(lhs.approx_eq(&rhs, tol), lhs.abs_diff(&rhs), || {
            json!({"xi": json::scalar(&xi), "a": json::alg_element(&a), "b": json::alg_element(&b),
                   "lhs": json::scalar(&lhs), "rhs": json::scalar(&rhs)})
        });
    }
    t.finish()
}
