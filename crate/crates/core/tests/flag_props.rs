mod common;

use common::arb_poly;
use proptest::prelude::*;
use schubert_fgl::exec::Strategy;
use schubert_fgl::fgl::make_multiplicative;
use schubert_fgl::flag::{
    bott_samelson_class, ck_schubert_class, class_eq, fingerprint, operator_a, operator_a_ck, FlagClass, FlagContext,
};
use schubert_fgl::perm::{all_reduced_words, compose, longest_element, Permutation};
use schubert_fgl::poly::Poly;
use schubert_fgl::schubert::{apply_partial, double_poly, Family};

/// `e_k(x_1..x_n) - e_k(y_1..y_n)`.
fn ideal_generator(n: usize, k: usize) -> Poly {
    let elementary = |var: fn(usize) -> Poly| {
        let mut e = vec![Poly::int(0); n + 1];
        e[0] = Poly::int(1);
        for i in 1..=n {
            for j in (1..=i).rev() {
                let next = &e[j] + &(&e[j - 1] * &var(i));
                e[j] = next;
            }
        }
        e[k].clone()
    };
    elementary(Poly::x) - elementary(Poly::y)
}

fn random_ideal_element(n: usize, coeffs: &[Poly]) -> Poly {
    coeffs.iter().enumerate().fold(Poly::int(0), |acc, (k, c)| acc + c * &ideal_generator(n, k % n + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn operators_preserve_the_ideal(coeffs in prop::collection::vec(arb_poly(3, true, 3), 1..4)) {
        let j = random_ideal_element(3, &coeffs);
        let zero = FlagClass::polynomial(Poly::int(0));
        for ctx in [FlagContext::ch(3), FlagContext::ck(3)] {
            let jc = FlagClass::polynomial(if ctx.mode() == schubert_fgl::flag::Mode::Ch {
                schubert_fgl::schubert::specialize_beta(&j, schubert_fgl::schubert::BetaValue::Zero)
            } else {
                j.clone()
            });
            prop_assert!(class_eq(&ctx, &jc, &zero));
            for i in 1..3 {
                prop_assert!(class_eq(&ctx, &operator_a(&ctx, i, &jc).unwrap(), &zero));
            }
        }
    }

    #[test]
    fn ck_absorption(p in arb_poly(3, true, 5)) {
        let ctx = FlagContext::ck(3);
        let f = FlagClass::rational(p, vec![1, 2]);
        for i in 1..3 {
            let once = operator_a_ck(&ctx, i, &f).unwrap();
            let twice = operator_a_ck(&ctx, i, &once).unwrap();
            prop_assert_eq!(twice, once.mul_poly(&Poly::beta()));
        }
    }

    #[test]
    fn additive_operator_is_divided_difference(p in arb_poly(3, false, 6)) {
        let ctx = FlagContext::ch(3);
        for i in 1..3 {
            let a = operator_a(&ctx, i, &FlagClass::polynomial(p.clone())).unwrap();
            prop_assert_eq!(a.numerator(), &apply_partial(i, &p));
        }
    }

    #[test]
    fn ck_mode_equals_the_ck_operator(p in arb_poly(3, true, 5)) {
        let ctx = FlagContext::ck(3);
        let f = FlagClass::polynomial(p);
        for i in 1..3 {
            prop_assert_eq!(operator_a(&ctx, i, &f).unwrap(), operator_a_ck(&ctx, i, &f).unwrap());
        }
    }
}

fn words_of(w: &Permutation) -> Vec<Vec<usize>> {
    let v = compose(&longest_element(w.n()), w).unwrap();
    all_reduced_words(&v).into_iter().map(|r| r.word().to_vec()).collect()
}

#[test]
fn reduced_word_independence_in_the_quotient() {
    for ctx in [FlagContext::ch(4), FlagContext::ck(4)] {
        for w in Permutation::all(4) {
            let words = words_of(&w);
            let first = bott_samelson_class(&ctx, &words[0]).unwrap();
            for word in &words[1..] {
                assert!(class_eq(&ctx, &first, &bott_samelson_class(&ctx, word).unwrap()), "{w} {word:?}");
            }
        }
    }
}

#[test]
fn main_ck_theorem_all_of_s4() {
    let ctx = FlagContext::ck(4);
    for w in Permutation::all(4) {
        let target = ck_schubert_class(&ctx, &w).unwrap();
        let c = bott_samelson_class(&ctx, &words_of(&w)[0]).unwrap();
        assert!(class_eq(&ctx, &c, &target), "{w}");
    }
}

#[test]
fn ch_chains_give_schubert_polynomials() {
    let ctx = FlagContext::ch(4);
    for w in Permutation::all(4) {
        for word in words_of(&w) {
            let c = bott_samelson_class(&ctx, &word).unwrap();
            assert!(class_eq(&ctx, &c, &FlagClass::polynomial(double_poly(Family::Schubert, &w))));
        }
    }
}

#[test]
fn fgl_mode_tracks_precision() {
    let law = schubert_fgl::verify::hyperbolic_law();
    let ctx = FlagContext::fgl(3, law, None);
    let c = bott_samelson_class(&ctx, &[1, 2]).unwrap();
    assert_eq!(c.precision(), Some(4));
    assert!(c.to_string().ends_with("+ O(5)"));
    let m = FlagContext::fgl(3, make_multiplicative(), Some(6));
    assert_eq!(bott_samelson_class(&m, &[1, 2, 1]).unwrap().precision(), Some(3));
}

#[test]
fn fingerprints_are_strategy_independent() {
    let seq = FlagContext::ck(4).with_strategy(Strategy::Sequential);
    let par = FlagContext::ck(4).with_strategy(Strategy::Parallel);
    let c = ck_schubert_class(&seq, &"[2,4,1,3]".parse().unwrap()).unwrap();
    assert_eq!(fingerprint(&seq, &c), fingerprint(&par, &c));
}
