mod common;

use common::arb_poly;
use proptest::prelude::*;
use schubert_fgl::perm::{longest_element, Permutation};
use schubert_fgl::poly::{parse_poly, Poly, Var};
use schubert_fgl::schubert::{
    apply_partial, apply_phi, apply_pi, degeneracy_class, double_poly, specialize_beta, BetaValue, Family,
};
use schubert_fgl::verify::{self, Options};

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn braid_relations(p in arb_poly(4, true, 5)) {
        for op in [apply_phi as fn(usize, &Poly) -> Poly, apply_partial, apply_pi] {
            prop_assert_eq!(op(1, &op(3, &p)), op(3, &op(1, &p)));
            for i in 1..3 {
                let j = i + 1;
                prop_assert_eq!(op(i, &op(j, &op(i, &p))), op(j, &op(i, &op(j, &p))));
            }
        }
    }

    #[test]
    fn quadratic_relations(p in arb_poly(3, true, 5)) {
        for i in 1..3 {
            let phi = apply_phi(i, &p);
            prop_assert_eq!(apply_phi(i, &phi), -(Poly::beta() * &phi));
            prop_assert!(apply_partial(i, &apply_partial(i, &p)).is_zero());
            let pi = apply_pi(i, &p);
            prop_assert_eq!(apply_pi(i, &pi), pi);
        }
    }

    #[test]
    fn divisibility(p in arb_poly(3, true, 6)) {
        for i in 1..3 {
            let one = Poly::int(1);
            let b = Poly::beta();
            let num = (&one + &b * Poly::x(i + 1)) * &p - (&one + &b * Poly::x(i)) * p.swap_vars(i);
            let q = num.div_by_difference(Var::x(i), Var::x(i + 1)).unwrap();
            prop_assert_eq!(&q * &(Poly::x(i) - Poly::x(i + 1)), num);
            prop_assert_eq!(q, apply_phi(i, &p));
        }
    }

    #[test]
    fn linear_over_symmetric_factors(p in arb_poly(3, true, 4), q in arb_poly(3, true, 3)) {
        for i in 1..3 {
            let s = &q + &q.swap_vars(i);
            prop_assert_eq!(apply_phi(i, &(&s * &p)), &s * &apply_phi(i, &p));
        }
    }
}

#[test]
fn reduced_word_independence_s4() {
    let r = verify::reduced_words(4, &Options::default());
    assert!(r.passed(), "{r}");
}

#[test]
fn stability_and_specialization() {
    let o = Options::default();
    for r in [verify::stability(3, &o), verify::special(4, &o)] {
        assert!(r.passed(), "{r}");
    }
    // The longest element of S_2 viewed in S_3.
    assert_eq!(double_poly(Family::Beta, &perm("[2,1,3]")).to_string(), "x1 + y1 + b*x1*y1");
}

#[test]
fn polynomial_examples() {
    assert_eq!(double_poly(Family::Beta, &perm("[2,1]")).to_string(), "x1 + y1 + b*x1*y1");
    assert_eq!(double_poly(Family::Schubert, &perm("[2,1]")).to_string(), "x1 - y1");
    assert!(double_poly(Family::Schubert, &perm("[1,2]")).is_one());
    assert!(double_poly(Family::Grothendieck, &Permutation::identity(4)).is_one());
    let h = double_poly(Family::Beta, &longest_element(3));
    let expected = parse_poly("(x1 + y1 + b*x1*y1)*(x1 + y2 + b*x1*y2)*(x2 + y1 + b*x2*y1)").unwrap();
    assert_eq!(h, expected);
    for w in Permutation::all(4) {
        let h = double_poly(Family::Beta, &w);
        let lowest = specialize_beta(&h, BetaValue::Zero);
        assert_eq!(lowest.total_degree().unwrap(), w.length() as u32, "{w}");
    }
}

#[test]
fn degeneracy_class_evaluation() {
    let w = perm("[2,1]");
    let zs = [Poly::var(Var::z(1)), Poly::var(Var::z(2))];
    let ys = [Poly::y(1), Poly::y(2)];
    let c = degeneracy_class(Family::Schubert, &w, &zs, &ys).unwrap();
    assert_eq!(c, parse_poly("z1 - y1").unwrap());
    assert!(degeneracy_class(Family::Schubert, &w, &zs[..1], &ys).is_err());
}
