mod common;

use std::collections::BTreeMap;

use common::{arb_nonzero_poly, arb_poly};
use proptest::prelude::*;
use schubert_fgl::poly::{parse_poly, series_inverse, Monomial, Poly, TruncSeries, Truncation, Var, VarMask};

fn unit_series(cap: u32) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(((0u32..4, 0u32..4), -4i64..=4), 0..8).prop_map(move |terms| {
        let t = Truncation::new(cap, VarMask::AUX);
        let mut p = Poly::int(1);
        for ((a, b), c) in terms {
            if a + b == 0 {
                continue;
            }
            let m = Monomial::from_pairs([(Var::U, a), (Var::V, b)].into_iter().filter(|(_, e)| *e > 0));
            p += &Poly::monomial(p.ring().clone(), m, c).unwrap();
        }
        TruncSeries::new(p.truncate(t), t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in arb_poly(3, true, 5), b in arb_poly(3, true, 5), c in arb_poly(3, true, 5)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division(a in arb_poly(3, true, 5), b in arb_nonzero_poly(3, true, 4)) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_and_json_round_trip(a in arb_poly(4, true, 6)) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(Poly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        p in arb_poly(2, true, 4),
        q in arb_poly(2, true, 4),
        s1 in arb_poly(2, false, 3),
        s2 in arb_poly(2, false, 3),
    ) {
        let mut b = BTreeMap::new();
        b.insert(Var::x(1), s1);
        b.insert(Var::y(2), s2);
        let sub = |r: &Poly| r.substitute(&b, false).unwrap();
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
    }

    #[test]
    fn swap_is_an_involution(a in arb_poly(3, false, 6)) {
        prop_assert_eq!(a.swap_vars(1).swap_vars(1), a.clone());
        let sym = &a + &a.swap_vars(2);
        prop_assert!(sym.is_symmetric(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_inverse_is_inverse(s in unit_series(6)) {
        let inv = series_inverse(&s).unwrap();
        prop_assert!(inv.try_mul(&s).unwrap().poly().is_one());
    }
}

#[test]
fn printing_examples() {
    let p = parse_poly("x1 + y1 + b*x1*y1").unwrap();
    assert_eq!(p.to_string(), "x1 + y1 + b*x1*y1");
    assert_eq!(parse_poly("(x1 - y1)*(x2 - y1)").unwrap().to_string(), "x1*x2 - x1*y1 - x2*y1 + y1^2");
    assert_eq!(parse_poly("0").unwrap().to_string(), "0");
}
