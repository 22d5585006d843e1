use heis_core::group::{coadjoint, HeisDualElement, HeisGroupElement};
use heis_core::{omega, Rational, Scalar, SympCovector, SympVector};
use proptest::prelude::*;

fn ratio() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rational::from_ratio(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = SympVector<Rational>> {
    (
        prop::collection::vec(ratio(), n),
        prop::collection::vec(ratio(), n),
    )
        .prop_map(|(x, y)| SympVector::new(x, y).unwrap())
}

fn element(n: usize) -> impl Strategy<Value = HeisGroupElement<Rational>> {
    (vector(n), ratio()).prop_map(|(v, r)| HeisGroupElement::new(v, r))
}

fn dual(n: usize) -> impl Strategy<Value = HeisDualElement<Rational>> {
    (
        prop::collection::vec(ratio(), n),
        prop::collection::vec(ratio(), n),
        ratio(),
    )
        .prop_map(|(x, y, mu)| HeisDualElement::new(SympCovector::new(x, y).unwrap(), mu))
}

proptest! {
    #[test]
    fn group_law_is_associative(g in element(2), h in element(2), k in element(2)) {
        let left = g.mul(&h).unwrap().mul(&k).unwrap();
        let right = g.mul(&h.mul(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_identity(g in element(3)) {
        prop_assert_eq!(g.mul(&g.inverse()).unwrap(), HeisGroupElement::identity(3));
        prop_assert_eq!(g.mul(&HeisGroupElement::identity(3)).unwrap(), g);
    }

    #[test]
    fn coadjoint_is_an_action(g in element(2), h in element(2), f in dual(2)) {
        let lhs = coadjoint(&g, &coadjoint(&h, &f).unwrap()).unwrap();
        let rhs = coadjoint(&g.mul(&h).unwrap(), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_is_nondegenerate_on_basis(u in vector(2)) {
        let hits = (0..4).filter(|&j| !omega(&u, &SympVector::basis(2, j)).unwrap().approx_zero(0.0)).count();
        prop_assert_eq!(hits == 0, u.is_zero());
    }
}
