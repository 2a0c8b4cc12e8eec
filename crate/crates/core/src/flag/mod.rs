//! The flag bundle's cohomology as `R[x_1..x_n] / J` with
//! `J = (e_i(x) - e_i(y))`, push-forward operators, and Bott-Samelson
//! classes.
//!
//! In CK mode a class is stored exactly as `num / prod_j (1 - b y_j)^{e_j}`.
//! The operators act on `x` only, so they never touch the denominator, and
//! equality mod `J` is decided on cross-multiplied numerators. In FGL mode a
//! class is a series in `x, y` known up to a tracked precision.

mod bott;

pub use bott::{
    base_class, bott_samelson_class, ck_schubert_class, operator_a, operator_a_ck, pullback_to_base, rational_chi,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chern::ChernError;
use crate::exec::{self, Strategy};
use crate::fgl::{make_additive, make_multiplicative, FglError, FormalGroupLaw};
use crate::perm::Permutation;
use crate::poly::{Poly, Truncation, Var, VarMask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("operation needs {expected} mode, context is {got}")]
    Mode { expected: Mode, got: Mode },
    #[error("operator index {i} outside 1..{n}")]
    BadIndex { i: usize, n: usize },
    #[error("expected {expected} roots, got {got}")]
    RootCount { expected: usize, got: usize },
    #[error("permutation {perm} is not in S_{n}")]
    PermSize { perm: String, n: usize },
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Chern(#[from] ChernError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    /// Additive law, exact polynomials.
    Ch,
    /// Multiplicative law over `ZZ[b]`, exact rational classes.
    Ck,
    /// A user law, series truncated at the context cap.
    Fgl,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ch => "ch",
            Mode::Ck => "ck",
            Mode::Fgl => "fgl",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s.to_ascii_lowercase().as_str() {
            "ch" => Ok(Mode::Ch),
            "ck" => Ok(Mode::Ck),
            "fgl" => Ok(Mode::Fgl),
            _ => Err(format!("unknown mode {s:?}; expected ch, ck or fgl")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlagContext {
    n: usize,
    mode: Mode,
    law: FormalGroupLaw,
    cap: u32,
    strategy: Strategy,
}

impl FlagContext {
    pub fn ch(n: usize) -> FlagContext {
        FlagContext { n, mode: Mode::Ch, law: make_additive(), cap: default_cap(n), strategy: Strategy::default() }
    }

    /// The cap only bounds series expansions for display and pullback.
    pub fn ck(n: usize) -> FlagContext {
        FlagContext {
            n,
            mode: Mode::Ck,
            law: make_multiplicative(),
            cap: (n * n) as u32,
            strategy: Strategy::default(),
        }
    }

    /// `cap` defaults to `n(n-1)`, enough for every product of at most
    /// `dim Fl` roots.
    pub fn fgl(n: usize, law: FormalGroupLaw, cap: Option<u32>) -> FlagContext {
        let cap = cap.unwrap_or_else(|| default_cap(n));
        let law = if law.is_polynomial() && law.cap() < cap { law.with_cap(cap) } else { law };
        FlagContext { n, mode: Mode::Fgl, law, cap, strategy: Strategy::default() }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> FlagContext {
        self.strategy = strategy;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Truncation for FGL-mode series.
    pub fn series_truncation(&self, precision: u32) -> Truncation {
        Truncation::new(precision, VarMask::X | VarMask::Y)
    }

    fn require(&self, mode: Mode) -> Result<(), FlagError> {
        if self.mode != mode {
            return Err(FlagError::Mode { expected: mode, got: self.mode });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<(), FlagError> {
        if i == 0 || i >= self.n {
            return Err(FlagError::BadIndex { i, n: self.n });
        }
        Ok(())
    }
}

pub fn default_cap(n: usize) -> u32 {
    (n * n.saturating_sub(1)).max(1) as u32
}

/// A class `num / prod_j (1 - b y_j)^{denom[j-1]}`, known up to total degree
/// `precision` when that is set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagClass {
    num: Poly,
    denom: Vec<u32>,
    precision: Option<u32>,
}

impl FlagClass {
    pub fn polynomial(num: Poly) -> FlagClass {
        FlagClass { num, denom: Vec::new(), precision: None }
    }

    pub fn rational(num: Poly, denom: Vec<u32>) -> FlagClass {
        let mut c = FlagClass { num, denom, precision: None };
        c.trim();
        c
    }

    pub fn series(num: Poly, precision: u32) -> FlagClass {
        FlagClass { num, denom: Vec::new(), precision: Some(precision) }
    }

    fn trim(&mut self) {
        while self.denom.last() == Some(&0) {
            self.denom.pop();
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Exponent of `(1 - b y_j)` in the denominator.
    pub fn denominator(&self) -> &[u32] {
        &self.denom
    }

    pub fn denominator_exponent(&self, j: usize) -> u32 {
        self.denom.get(j - 1).copied().unwrap_or(0)
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn is_truncated(&self) -> bool {
        self.precision.is_some()
    }

    pub(crate) fn with_numerator(&self, num: Poly) -> FlagClass {
        FlagClass { num, denom: self.denom.clone(), precision: self.precision }
    }

    /// `prod_j (1 - b y_j)^{e_j}`.
    pub fn denominator_poly(exponents: &[u32]) -> Poly {
        let mut acc = Poly::int(1);
        for (k, &e) in exponents.iter().enumerate() {
            if e > 0 {
                acc = acc * (Poly::int(1) - Poly::beta() * Poly::y(k + 1)).pow(e);
            }
        }
        acc
    }

    /// The numerator over the common denominator `target`.
    pub fn cleared(&self, target: &[u32]) -> Poly {
        let extra: Vec<u32> = target
            .iter()
            .enumerate()
            .map(|(k, &t)| {
                let own = self.denominator_exponent(k + 1);
                assert!(t >= own, "target denominator too small");
                t - own
            })
            .collect();
        &self.num * &FlagClass::denominator_poly(&extra)
    }

    /// Expansion as a series, dividing by the denominator with geometric
    /// series truncated at `y`-degree `cap`.
    pub fn expanded(&self, cap: u32) -> Poly {
        if self.denom.is_empty() {
            return self.num.clone();
        }
        let t = Truncation::new(cap, VarMask::Y);
        let mut acc = self.num.truncate(t);
        for (k, &e) in self.denom.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let by = Poly::beta() * Poly::y(k + 1);
            let mut geom = Poly::int(1);
            let mut power = Poly::int(1);
            for _ in 0..cap {
                power = power.mul_truncated(&by, t);
                if power.is_zero() {
                    break;
                }
                geom += &power;
            }
            for _ in 0..e {
                acc = acc.mul_truncated(&geom, t);
            }
        }
        acc
    }

    pub fn add(&self, other: &FlagClass) -> FlagClass {
        let target = common_denominator(self, other);
        let precision = min_precision(self.precision, other.precision);
        FlagClass { num: self.cleared(&target) + other.cleared(&target), denom: target, precision }.normalized()
    }

    pub fn sub(&self, other: &FlagClass) -> FlagClass {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> FlagClass {
        self.with_numerator(self.num.scale(&c.into()))
    }

    /// Product with a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> FlagClass {
        self.with_numerator(&self.num * p)
    }

    fn normalized(mut self) -> FlagClass {
        self.trim();
        self
    }
}

impl fmt::Display for FlagClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.iter().all(|&e| e == 0) {
            write!(f, "{}", self.num)?;
        } else {
            let parts: Vec<String> = self
                .denom
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { format!("(1 - b*y{})", k + 1) } else { format!("(1 - b*y{})^{e}", k + 1) })
                .collect();
            write!(f, "({}) / ({})", self.num, parts.join("*"))?;
        }
        if let Some(p) = self.precision {
            write!(f, " + O({})", p + 1)?;
        }
        Ok(())
    }
}

fn common_denominator(a: &FlagClass, b: &FlagClass) -> Vec<u32> {
    let len = a.denom.len().max(b.denom.len());
    (1..=len).map(|j| a.denominator_exponent(j).max(b.denominator_exponent(j))).collect()
}

fn min_precision(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

/// `x_i := y_{sigma(i)}`.
pub fn evaluate_at(p: &Poly, sigma: &Permutation) -> Poly {
    p.rename(|v| match v {
        Var::X(i) if (i as usize) <= sigma.n() => Var::y(sigma.apply(i as usize)),
        v => v,
    })
}

/// The difference `a - b` over a common denominator, evaluated at every
/// `x := sigma(y)`; the evaluation vector is a canonical fingerprint of the
/// class mod `J`.
pub fn fingerprint(ctx: &FlagContext, c: &FlagClass) -> Vec<Poly> {
    let perms = Permutation::all(ctx.n);
    let t = c.precision.map(|p| ctx.series_truncation(p));
    exec::map(ctx.strategy, &perms, |sigma| {
        let e = evaluate_at(&c.num, sigma);
        match t {
            Some(t) => e.truncate(t),
            None => e,
        }
    })
}

/// Equality mod `J`: the cross-multiplied difference vanishes at every
/// `x := sigma(y)`. In FGL mode the check is up to the smaller precision.
pub fn class_eq(ctx: &FlagContext, a: &FlagClass, b: &FlagClass) -> bool {
    first_disagreement(ctx, a, b).is_none()
}

/// The first permutation (in lexicographic order) at which the two classes
/// differ, with the evaluated difference.
pub fn first_disagreement(ctx: &FlagContext, a: &FlagClass, b: &FlagClass) -> Option<(Permutation, Poly)> {
    let diff = a.sub(b);
    let t = diff.precision.map(|p| ctx.series_truncation(p));
    let perms = Permutation::all(ctx.n);
    exec::find_first(ctx.strategy, &perms, |sigma| {
        let mut e = evaluate_at(&diff.num, sigma);
        if let Some(t) = t {
            e = e.truncate(t);
        }
        (!e.is_zero()).then(|| (sigma.clone(), e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn c(s: &str) -> FlagClass {
        FlagClass::polynomial(parse_poly(s).unwrap())
    }

    #[test]
    fn class_eq_examples() {
        let ctx = FlagContext::ch(2);
        assert!(class_eq(&ctx, &c("x1 + x2"), &c("y1 + y2")));
        assert!(!class_eq(&ctx, &c("x1"), &c("y1")));
        assert!(class_eq(&ctx, &c("x1*x2"), &c("y1*y2")));
        let (sigma, diff) = first_disagreement(&ctx, &c("x1"), &c("y1")).unwrap();
        assert_eq!(sigma.to_string(), "[2,1]");
        assert_eq!(diff.to_string(), "-y1 + y2");
    }

    #[test]
    fn strategies_agree() {
        let seq = FlagContext::ch(3).with_strategy(Strategy::Sequential);
        let par = FlagContext::ch(3).with_strategy(Strategy::Parallel);
        let a = c("x1^2 + x2*x3");
        assert_eq!(fingerprint(&seq, &a), fingerprint(&par, &a));
        assert_eq!(fingerprint(&seq, &a).len(), 6);
    }

    #[test]
    fn rational_classes() {
        let ctx = FlagContext::ck(2);
        let a = FlagClass::rational(parse_poly("x1 - y1").unwrap(), vec![1]);
        let b = FlagClass::rational(parse_poly("(x1 - y1)*(1 - b*y2)").unwrap(), vec![1, 1]);
        assert!(class_eq(&ctx, &a, &b));
        assert_eq!(a.to_string(), "(x1 - y1) / ((1 - b*y1))");
        let e = a.expanded(2);
        assert_eq!(e, parse_poly("(x1 - y1)*(1 + b*y1 + b^2*y1^2)").unwrap().truncate(Truncation::new(2, VarMask::Y)));
        assert!(FlagClass::rational(parse_poly("1").unwrap(), vec![0, 0]).denominator().is_empty());
    }

    #[test]
    fn truncated_eq() {
        let ctx = FlagContext::fgl(2, make_additive(), Some(2));
        let a = FlagClass::series(parse_poly("x1 + x2 + x1^3").unwrap(), 2);
        let b = FlagClass::series(parse_poly("y1 + y2").unwrap(), 2);
        assert!(class_eq(&ctx, &a, &b));
        assert_eq!(a.add(&b).precision(), Some(2));
    }
}
