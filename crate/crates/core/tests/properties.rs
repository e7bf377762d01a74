//! Property-based invariants over randomly generated exact data.

use proptest::prelude::*;

use dahakit::afflattice::{pair, AffCoweight, AffWeight};
use dahakit::daha::{self, DahaDegree, DahaElt};
use dahakit::extweyl::{self, ExtWeylElt};
use dahakit::poly::{nvars_for, AffPoly, Monomial};
use dahakit::rat::{ratio, Rat};
use dahakit::rootsys::{CartanType, FinCoweight, FinWeight, IsogenyFlavor, RootDatum};

fn a2() -> RootDatum {
    RootDatum::new(CartanType::A, 2, IsogenyFlavor::SimplyConnected).unwrap()
}

fn b2() -> RootDatum {
    RootDatum::new(CartanType::B, 2, IsogenyFlavor::SimplyConnected).unwrap()
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn coweight2() -> impl Strategy<Value = FinCoweight> {
    prop::collection::vec(small_rat(), 2).prop_map(FinCoweight)
}

fn weight2() -> impl Strategy<Value = FinWeight> {
    prop::collection::vec(small_rat(), 2).prop_map(FinWeight)
}

fn aff_weight2() -> impl Strategy<Value = AffWeight> {
    (small_rat(), weight2(), small_rat()).prop_map(|(c_lambda, fin, c_delta)| AffWeight {
        c_lambda,
        fin,
        c_delta,
    })
}

fn aff_coweight2() -> impl Strategy<Value = AffCoweight> {
    (small_rat(), coweight2(), small_rat()).prop_map(|(c_k, fin, c_d)| AffCoweight {
        c_k,
        fin,
        c_d,
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=2, 0..=max_len)
}

fn elt_from_word(d: &RootDatum, w: &[usize]) -> ExtWeylElt {
    let mut a = ExtWeylElt::identity(d);
    for &i in w {
        a = extweyl::mul(d, &a, &extweyl::simple_reflection(d, i).unwrap());
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn killing_form_symmetric_and_invariant(x in coweight2(), y in coweight2(), w in word(5)) {
        let d = b2();
        prop_assert_eq!(d.killing_form(&x, &y), d.killing_form(&y, &x));
        let a = elt_from_word(&d, &w);
        let wx = d.weyl_act_coweight(&a.w, &x);
        let wy = d.weyl_act_coweight(&a.w, &y);
        prop_assert_eq!(d.killing_form(&wx, &wy), d.killing_form(&x, &y));
    }

    #[test]
    fn star_intertwines_pairing(x in coweight2(), y in coweight2()) {
        let d = a2();
        prop_assert_eq!(d.pairing(&d.star(&x), &y), d.killing_form(&x, &y));
    }

    #[test]
    fn group_law_associative_and_length_subadditive(
        w1 in word(4), w2 in word(4), w3 in word(4)
    ) {
        let d = a2();
        let a = elt_from_word(&d, &w1);
        let b = elt_from_word(&d, &w2);
        let c = elt_from_word(&d, &w3);
        let left = extweyl::mul(&d, &extweyl::mul(&d, &a, &b), &c);
        let right = extweyl::mul(&d, &a, &extweyl::mul(&d, &b, &c));
        prop_assert_eq!(&left, &right);
        prop_assert!(extweyl::length(&d, &left)
            <= extweyl::length(&d, &a) + extweyl::length(&d, &b) + extweyl::length(&d, &c));
        let ab = extweyl::mul(&d, &a, &b);
        prop_assert!(extweyl::mul(&d, &ab, &extweyl::inv(&d, &ab)).is_identity());
    }

    #[test]
    fn reduced_words_evaluate_back(w in word(6)) {
        let d = b2();
        let a = elt_from_word(&d, &w);
        let cox = extweyl::reduced_word(&d, &a);
        prop_assert_eq!(cox.word.len() as u64, extweyl::length(&d, &a));
        prop_assert_eq!(extweyl::evaluate_word(&d, &cox), a);
    }

    #[test]
    fn action_respects_pairing(
        w in word(4), xi in aff_weight2(), eta in aff_coweight2()
    ) {
        let d = a2();
        let a = elt_from_word(&d, &w);
        let p0 = pair(&d, &xi, &eta).unwrap();
        let p1 = pair(
            &d,
            &extweyl::act_on_weight(&d, &a, &xi),
            &extweyl::act_on_coweight(&d, &a, &eta),
        ).unwrap();
        prop_assert_eq!(p0, p1);
    }

    #[test]
    fn poly_ring_laws(exps in prop::collection::vec(0u8..3, 5), c in small_rat()) {
        let d = a2();
        let n = nvars_for(&d);
        let m = Monomial(exps);
        let mut p = AffPoly::zero(n);
        p.add_term(m, c.clone());
        let q = AffPoly::var(n, 1).add(&AffPoly::var(n, 3).scale(&c));
        let r = AffPoly::var(n, 0).sub(&AffPoly::one(n));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn daha_degree_additive_on_homogeneous(w1 in word(3), w2 in word(3), e1 in 0u8..3, e2 in 0u8..3) {
        let d = a2();
        let n = nvars_for(&d);
        let a = DahaElt::from_group(&d, elt_from_word(&d, &w1));
        let p1 = AffPoly::var(n, 1).pow(e1 as u32);
        let b = DahaElt::from_group(&d, elt_from_word(&d, &w2));
        let p2 = AffPoly::var(n, 2).pow(e2 as u32);
        let x = daha::mul(&d, &a, &DahaElt::from_poly(&d, p1));
        let y = daha::mul(&d, &b, &DahaElt::from_poly(&d, p2));
        let product = daha::mul(&d, &x, &y);
        match (x.degree(), y.degree(), product.degree()) {
            (DahaDegree::Homogeneous(dx), DahaDegree::Homogeneous(dy), DahaDegree::Homogeneous(dp)) => {
                prop_assert_eq!(dp, dx + dy);
            }
            (DahaDegree::Homogeneous(_), DahaDegree::Homogeneous(_), DahaDegree::NegInfinity) => {
                // cancellation to zero is allowed
            }
            (dx, dy, dp) => {
                prop_assert!(false, "unexpected degrees {:?} {:?} {:?}", dx, dy, dp);
            }
        }
    }

    #[test]
    fn specialization_is_an_algebra_map(w1 in word(3), w2 in word(3)) {
        let d = a2();
        let n = nvars_for(&d);
        let x = daha::mul(
            &d,
            &DahaElt::from_group(&d, elt_from_word(&d, &w1)),
            &DahaElt::from_poly(&d, AffPoly::var(n, 1).add(&AffPoly::var(n, n - 1))),
        );
        let y = daha::mul(
            &d,
            &DahaElt::from_group(&d, elt_from_word(&d, &w2)),
            &DahaElt::from_poly(&d, AffPoly::var(n, 2)),
        );
        let lhs = daha::specialize_degenerate(&d, &daha::mul(&d, &x, &y));
        let rhs = daha::specialize_degenerate(
            &d,
            &daha::mul(
                &d,
                &daha::specialize_degenerate(&d, &x),
                &daha::specialize_degenerate(&d, &y),
            ),
        );
        prop_assert_eq!(lhs, rhs);
    }
}
