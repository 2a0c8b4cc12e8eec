#![allow(dead_code)]

use proptest::prelude::*;
use schubert_fgl::poly::{Monomial, Poly, Var};
use schubert_fgl::schubert::Family;

/// Variables `x_1..x_n, y_1, y_2` and optionally `b`.
pub fn vars(n: usize, with_beta: bool) -> Vec<Var> {
    let mut v: Vec<Var> = (1..=n).map(Var::x).collect();
    v.extend([Var::y(1), Var::y(2)]);
    if with_beta {
        v.push(Var::Beta);
    }
    v
}

pub fn build(vars: &[Var], with_beta: bool, terms: Vec<(Vec<u32>, i64)>) -> Poly {
    let ring = if with_beta { Family::Beta.ring() } else { Family::Schubert.ring() };
    let terms = terms.into_iter().map(|(exps, c)| {
        let m = Monomial::from_pairs(vars.iter().copied().zip(exps).filter(|(_, e)| *e > 0));
        (m, c.into())
    });
    Poly::from_terms(ring, terms).unwrap()
}

/// Sparse polynomials with small exponents and coefficients.
pub fn arb_poly(n: usize, with_beta: bool, max_terms: usize) -> impl Strategy<Value = Poly> {
    let vs = vars(n, with_beta);
    let width = vs.len();
    prop::collection::vec((prop::collection::vec(0u32..3, width), -6i64..=6), 0..=max_terms)
        .prop_map(move |terms| build(&vs, with_beta, terms))
}

pub fn arb_nonzero_poly(n: usize, with_beta: bool, max_terms: usize) -> impl Strategy<Value = Poly> {
    arb_poly(n, with_beta, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// A permutation of `1..=n` by a seeded shuffle.
pub fn arb_perm(n: usize) -> impl Strategy<Value = schubert_fgl::perm::Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| schubert_fgl::perm::Permutation::new(v).unwrap())
}
