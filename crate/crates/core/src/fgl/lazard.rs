use num_traits::Signed;

use super::{aux_trunc, bind, SERIES_MASK};
use crate::poly::{CoeffRing, Monomial, Poly, Var};

/// The free coefficient `a{i}_{j}` with `i <= j`, grade `1 - i - j`.
pub fn lazard_generator(i: u32, j: u32) -> Var {
    let (i, j) = (i.min(j), i.max(j));
    Var::named(&format!("a{i}_{j}"))
}

fn free_ring(cap: u32) -> CoeffRing {
    let mut gens = Vec::new();
    for i in 1..cap {
        for j in i..cap {
            if i + j <= cap {
                gens.push((format!("a{i}_{j}"), 1 - i as i32 - j as i32));
            }
        }
    }
    CoeffRing::named(gens)
}

/// `u + v + sum_{i,j >= 1} a_ij u^i v^j` up to degree `cap`, with
/// `a_ij = a_ji` already imposed.
pub fn free_law_series(cap: u32) -> Poly {
    let ring = free_ring(cap);
    let mut f = (Poly::var(Var::U) + Poly::var(Var::V)).with_ring(ring.clone()).unwrap();
    for i in 1..cap {
        for j in 1..cap {
            if i + j <= cap {
                let term = Poly::var_in(ring.clone(), lazard_generator(i, j))
                    .unwrap()
                    .mul_monomial(&Monomial::from_pairs([(Var::U, i), (Var::V, j)]));
                f += &term;
            }
        }
    }
    f
}

/// Coefficients of `F(u, F(v,w)) - F(F(u,v), w)` for the free law, up to
/// total degree `cap`. Zeros are dropped and each relation is signed so its
/// leading coefficient is positive, then duplicates removed.
pub fn lazard_relations(cap: u32) -> Vec<Poly> {
    let f = free_law_series(cap);
    let t = aux_trunc(cap);
    let apply = |a: &Poly, b: &Poly| {
        let mut m = bind(Var::U, a);
        m.insert(Var::V, b.clone());
        f.substitute_truncated(&m, t).unwrap()
    };
    let (u, v, w) = (Poly::var(Var::U), Poly::var(Var::V), Poly::var(Var::W));
    let defect = apply(&u, &apply(&v, &w)).try_sub(&apply(&apply(&u, &v), &w)).unwrap();
    let mut out: Vec<Poly> = defect
        .coefficients_in(SERIES_MASK)
        .into_values()
        .map(|p| {
            let negative = p.leading_term().is_some_and(|(_, c)| c.is_negative());
            if negative {
                -p
            } else {
                p
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
