//! Divided-difference operators and the double Schubert, Grothendieck and
//! beta-polynomial families.

mod cache;

pub use cache::{clear_cache, export_cache, import_cache, CacheEntry};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{longest_element, reduced_word, word_product, Permutation};
use crate::poly::{CoeffRing, Poly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error("need at least {needed} roots, got {got}")]
    ShortRoots { needed: usize, got: usize },
    #[error("unknown polynomial family {0:?}")]
    UnknownFamily(String),
    #[error("operator index {i} outside 1..{n}")]
    BadIndex { i: usize, n: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Schubert,
    Grothendieck,
    Beta,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Schubert, Family::Grothendieck, Family::Beta];

    pub fn ring(self) -> CoeffRing {
        match self {
            Family::Beta => CoeffRing::IntegersBeta,
            _ => CoeffRing::Integers,
        }
    }

    /// The base-case factor for the pair `(x_i, y_j)`.
    pub fn factor(self, x: &Poly, y: &Poly) -> Poly {
        match self {
            Family::Schubert => x - y,
            Family::Grothendieck => x + y - x * y,
            Family::Beta => x + y + Poly::beta() * x * y,
        }
    }

    pub fn apply(self, i: usize, p: &Poly) -> Poly {
        match self {
            Family::Schubert => apply_partial(i, p),
            Family::Grothendieck => apply_pi(i, p),
            Family::Beta => apply_phi(i, p),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Schubert => "schubert",
            Family::Grothendieck => "grothendieck",
            Family::Beta => "beta",
        })
    }
}

impl FromStr for Family {
    type Err = SchubertError;
    fn from_str(s: &str) -> Result<Family, SchubertError> {
        match s.to_ascii_lowercase().as_str() {
            "schubert" | "s" => Ok(Family::Schubert),
            "grothendieck" | "g" => Ok(Family::Grothendieck),
            "beta" | "h" => Ok(Family::Beta),
            _ => Err(SchubertError::UnknownFamily(s.to_string())),
        }
    }
}

/// `(a P - b sigma_i(P)) / (x_i - x_{i+1})`; every caller guarantees
/// divisibility, so a remainder is a bug.
fn weighted_difference(i: usize, p: &Poly, a: &Poly, b: &Poly) -> Poly {
    let num = a * p - b * &p.swap_vars(i);
    num.div_by_difference(Var::x(i), Var::x(i + 1))
        .unwrap_or_else(|e| panic!("divided difference {i} of {p}: {e}"))
}

/// `(P - sigma_i P) / (x_i - x_{i+1})`.
pub fn apply_partial(i: usize, p: &Poly) -> Poly {
    let one = Poly::int(1);
    weighted_difference(i, p, &one, &one)
}

/// `((1 - x_{i+1}) P - (1 - x_i) sigma_i P) / (x_i - x_{i+1})`.
pub fn apply_pi(i: usize, p: &Poly) -> Poly {
    let one = Poly::int(1);
    weighted_difference(i, p, &(&one - &Poly::x(i + 1)), &(&one - &Poly::x(i)))
}

/// `((1 + b x_{i+1}) P - (1 + b x_i) sigma_i P) / (x_i - x_{i+1})`.
pub fn apply_phi(i: usize, p: &Poly) -> Poly {
    let one = Poly::int(1);
    let b = Poly::beta();
    weighted_difference(i, p, &(&one + &b * Poly::x(i + 1)), &(&one + &b * Poly::x(i)))
}

/// The value for `w0` in `S_n`: `prod_{i+j <= n} factor(x_i, y_j)`.
pub fn top_poly(family: Family, n: usize) -> Poly {
    let mut p = Poly::one(family.ring());
    for i in 1..n {
        for j in 1..=n - i {
            p = &p * &family.factor(&Poly::x(i), &Poly::y(j));
        }
    }
    p
}

/// Double polynomial of `w`, descending from `w0` along the
/// lexicographically smallest reduced word of `w0 w`. Cached.
pub fn double_poly(family: Family, w: &Permutation) -> Poly {
    if let Some(p) = cache::get(family, w) {
        return p;
    }
    let n = w.n();
    let w0 = longest_element(n);
    let p = if *w == w0 {
        top_poly(family, n)
    } else {
        let v = crate::perm::compose(&w0, w).unwrap();
        let word = reduced_word(&v);
        let last = *word.word().last().unwrap();
        family.apply(last, &double_poly(family, &w.mul_simple(last)))
    };
    cache::put(family, w, &p);
    p
}

/// Double polynomial of `w` computed along a caller-chosen word for
/// `w0 w`, applying the first letter first. Bypasses the cache.
pub fn double_poly_via(family: Family, w: &Permutation, word: &[usize]) -> Poly {
    let n = w.n();
    let w0 = longest_element(n);
    let v = crate::perm::compose(&w0, w).unwrap();
    assert_eq!(word_product(n, word).unwrap(), v, "word {word:?} does not multiply to w0 w");
    word.iter().fold(top_poly(family, n), |p, &i| family.apply(i, &p))
}

/// Values beta may be specialized to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BetaValue {
    Zero,
    MinusOne,
    NegBeta,
    Beta,
    /// Keep beta but make it invertible.
    Laurent,
}

impl FromStr for BetaValue {
    type Err = String;
    fn from_str(s: &str) -> Result<BetaValue, String> {
        match s {
            "0" => Ok(BetaValue::Zero),
            "-1" => Ok(BetaValue::MinusOne),
            "-b" | "-beta" => Ok(BetaValue::NegBeta),
            "b" | "beta" => Ok(BetaValue::Beta),
            "laurent" => Ok(BetaValue::Laurent),
            _ => Err(format!("unsupported beta value {s:?}")),
        }
    }
}

pub fn specialize_beta(p: &Poly, value: BetaValue) -> Poly {
    let out = match value {
        BetaValue::Zero => p.subs(Var::Beta, &Poly::int(0)),
        BetaValue::MinusOne => p.subs(Var::Beta, &Poly::int(-1)),
        BetaValue::NegBeta => p.subs(Var::Beta, &-Poly::beta()),
        BetaValue::Beta => p.clone(),
        BetaValue::Laurent => return p.with_ring(CoeffRing::IntegersBetaLaurent).unwrap(),
    };
    out.simplify_ring()
}

/// `y_j -> -y_j` for every `j`.
pub fn negate_y(p: &Poly) -> Poly {
    let bindings: BTreeMap<Var, Poly> = p
        .variables()
        .into_iter()
        .filter(|v| matches!(v, Var::Y(_)))
        .map(|v| (v, -Poly::var(v)))
        .collect();
    p.substitute(&bindings, false).unwrap()
}

/// The double polynomial of `w` evaluated at the given Chern roots.
pub fn degeneracy_class(family: Family, w: &Permutation, x_roots: &[Poly], y_roots: &[Poly]) -> Result<Poly, SchubertError> {
    let n = w.n();
    for roots in [x_roots, y_roots] {
        if roots.len() < n {
            return Err(SchubertError::ShortRoots { needed: n, got: roots.len() });
        }
    }
    let mut b = BTreeMap::new();
    for i in 1..=n {
        b.insert(Var::x(i), x_roots[i - 1].clone());
        b.insert(Var::y(i), y_roots[i - 1].clone());
    }
    Ok(double_poly(family, w).substitute(&b, false).expect("root substitution"))
}

/// `H_m = prod_{i+j <= n} (x_i + y_j + b x_i y_j) * prod_{k=m}^{n} (x_k + y_{n+1-k} + b x_k y_{n+1-k})`.
pub fn telescoping_product(n: usize, m: usize) -> Poly {
    let mut p = top_poly(Family::Beta, n);
    for k in m..=n {
        p = &p * &Family::Beta.factor(&Poly::x(k), &Poly::y(n + 1 - k));
    }
    p
}
