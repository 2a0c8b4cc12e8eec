use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::CoeffRing;
use super::series::Truncation;
use super::var::{Var, VarMask};
use super::PolyError;

pub(crate) type TermMap = BTreeMap<Monomial, BigInt>;

/// Sparse polynomial with exact integer coefficients.
///
/// The value represented is `b^beta_offset * sum(terms)`; the offset is
/// nonzero only over `IntegersBetaLaurent`, where it is normalised so that
/// some term has beta-exponent zero. Equality ignores the ring tag: an
/// integer polynomial equals the same polynomial viewed over `ZZ[b]`.
#[derive(Clone, Default)]
pub struct Poly {
    ring: CoeffRing,
    beta_offset: i32,
    terms: TermMap,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Ring arithmetic with ring-compatibility checking.
pub fn arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

pub(crate) fn add_term(map: &mut TermMap, mono: Monomial, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn add_term_ref(map: &mut TermMap, mono: &Monomial, coeff: &BigInt) {
    if let Some(c) = map.get_mut(mono) {
        *c += coeff;
        if c.is_zero() {
            map.remove(mono);
        }
    } else if !coeff.is_zero() {
        map.insert(mono.clone(), coeff.clone());
    }
}


type Term<'a> = (Monomial, &'a BigInt);
impl Poly {
    pub fn zero(ring: CoeffRing) -> Poly {
        Poly { ring, beta_offset: 0, terms: TermMap::new() }
    }

    pub fn one(ring: CoeffRing) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: CoeffRing, c: impl Into<BigInt>) -> Poly {
        let mut terms = TermMap::new();
        add_term(&mut terms, Monomial::one(), c.into());
        Poly { ring, beta_offset: 0, terms }
    }

    /// An integer constant over `ZZ`.
    pub fn int(c: i64) -> Poly {
        Poly::constant(CoeffRing::Integers, c)
    }

    /// A single variable. Beta lands in `ZZ[b]`; named generators need
    /// [`Poly::var_in`].
    pub fn var(v: Var) -> Poly {
        let ring = match v {
            Var::Beta => CoeffRing::IntegersBeta,
            Var::Named(_) => panic!("named generator {v} needs an explicit ring; use Poly::var_in"),
            _ => CoeffRing::Integers,
        };
        Poly::var_in(ring, v).expect("ring admits variable")
    }

    pub fn var_in(ring: CoeffRing, v: Var) -> Result<Poly, PolyError> {
        Poly::monomial(ring, Monomial::var(v), 1)
    }

    pub fn x(i: usize) -> Poly {
        Poly::var(Var::x(i))
    }

    pub fn y(i: usize) -> Poly {
        Poly::var(Var::y(i))
    }

    pub fn beta() -> Poly {
        Poly::var(Var::Beta)
    }

    pub fn monomial(ring: CoeffRing, mono: Monomial, c: impl Into<BigInt>) -> Result<Poly, PolyError> {
        Poly::from_terms(ring, [(mono, c.into())])
    }

    /// Builds from terms, merging duplicates and validating variables
    /// against the ring.
    pub fn from_terms<I>(ring: CoeffRing, terms: I) -> Result<Poly, PolyError>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut map = TermMap::new();
        for (m, c) in terms {
            if let Some(&(v, _)) = m.pairs().iter().find(|(v, _)| !ring.admits(*v)) {
                return Err(PolyError::ForeignVariable(v.name(), ring.to_string()));
            }
            add_term(&mut map, m, c);
        }
        let mut p = Poly { ring, beta_offset: 0, terms: map };
        p.normalize();
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(ring: CoeffRing, terms: TermMap) -> Poly {
        let mut p = Poly { ring, beta_offset: 0, terms };
        p.normalize();
        p
    }

    fn with_map(&self, terms: TermMap) -> Poly {
        let mut p = Poly { ring: self.ring.clone(), beta_offset: self.beta_offset, terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        if !self.ring.is_laurent() {
            debug_assert_eq!(self.beta_offset, 0);
            return;
        }
        if self.terms.is_empty() {
            self.beta_offset = 0;
            return;
        }
        let shift = self.terms.keys().map(|m| m.exponent(Var::Beta)).min().unwrap_or(0);
        if shift > 0 {
            let b = Monomial::var_pow(Var::Beta, shift);
            let terms = std::mem::take(&mut self.terms);
            self.terms = terms.into_iter().map(|(m, c)| (m.div(&b).unwrap(), c)).collect();
            self.beta_offset += shift as i32;
        }
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    /// Power of beta factored out (Laurent ring only).
    pub fn beta_offset(&self) -> i32 {
        self.beta_offset
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.beta_offset == 0
            && self.terms.len() == 1
            && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        if self.beta_offset != 0 {
            return BigInt::zero();
        }
        self.coefficient(&Monomial::one())
    }

    /// Leading term under the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, mask: VarMask) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(mask)).max()
    }

    /// Minimum degree over `mask`, i.e. the order of vanishing.
    pub fn order_in(&self, mask: VarMask) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(mask)).min()
    }

    pub fn degree_of(&self, v: Var) -> u32 {
        let base = self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0);
        if v == Var::Beta {
            (base as i64 + self.beta_offset as i64).max(0) as u32
        } else {
            base
        }
    }

    /// Variables occurring, in precedence order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect();
        if self.beta_offset != 0 {
            vars.push(Var::Beta);
        }
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Retags the ring, validating that all variables are admitted.
    pub fn with_ring(&self, ring: CoeffRing) -> Result<Poly, PolyError> {
        if let Some(v) = self.variables().into_iter().find(|v| !ring.admits(*v)) {
            return Err(PolyError::ForeignVariable(v.name(), ring.to_string()));
        }
        if self.beta_offset < 0 && !ring.is_laurent() {
            return Err(PolyError::ForeignVariable("b^-1".into(), ring.to_string()));
        }
        let mut terms = self.terms.clone();
        let mut offset = self.beta_offset;
        if !ring.is_laurent() && offset > 0 {
            let b = Monomial::var_pow(Var::Beta, offset as u32);
            terms = terms.into_iter().map(|(m, c)| (m.mul(&b), c)).collect();
            offset = 0;
        }
        let mut p = Poly { ring, beta_offset: offset, terms };
        p.normalize();
        Ok(p)
    }

    /// Embeds into the join of the two rings, aligning Laurent offsets.
    fn lift_pair(&self, other: &Poly) -> Result<(CoeffRing, i32, TermMap, TermMap), PolyError> {
        let ring = self.ring.join(&other.ring)?;
        let (p, q) = (self.beta_offset, other.beta_offset);
        let base = p.min(q);
        let shift = |map: &TermMap, by: i32| -> TermMap {
            if by == 0 {
                return map.clone();
            }
            let b = Monomial::var_pow(Var::Beta, by as u32);
            map.iter().map(|(m, c)| (m.mul(&b), c.clone())).collect()
        };
        Ok((ring, base, shift(&self.terms, p - base), shift(&other.terms, q - base)))
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.beta_offset == other.beta_offset {
            let ring = self.ring.join(&other.ring)?;
            let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
            let mut terms = big.terms.clone();
            for (m, c) in &small.terms {
                add_term_ref(&mut terms, m, c);
            }
            let mut p = Poly { ring, beta_offset: self.beta_offset, terms };
            p.normalize();
            return Ok(p);
        }
        let (ring, offset, mut a, b) = self.lift_pair(other)?;
        for (m, c) in b {
            add_term(&mut a, m, c);
        }
        let mut p = Poly { ring, beta_offset: offset, terms: a };
        p.normalize();
        Ok(p)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.try_mul_truncated(other, None)
    }

    /// Product, dropping terms whose `mask`-degree exceeds the cap.
    pub fn try_mul_truncated(&self, other: &Poly, trunc: Option<Truncation>) -> Result<Poly, PolyError> {
        let ring = self.ring.join(&other.ring)?;
        let mut terms = TermMap::new();
        let (a, b) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        match trunc {
            None => {
                for (ma, ca) in &a.terms {
                    for (mb, cb) in &b.terms {
                        add_term(&mut terms, ma.mul(mb), ca * cb);
                    }
                }
            }
            Some(t) => {
                let bdeg: Vec<(u32, &Monomial, &BigInt)> =
                    b.terms.iter().map(|(m, c)| (m.degree_in(t.mask), m, c)).collect();
                for (ma, ca) in &a.terms {
                    let da = ma.degree_in(t.mask);
                    if da > t.cap {
                        continue;
                    }
                    for &(db, mb, cb) in &bdeg {
                        if da + db <= t.cap {
                            add_term(&mut terms, ma.mul(mb), ca * cb);
                        }
                    }
                }
            }
        }
        let mut p = Poly { ring, beta_offset: self.beta_offset + other.beta_offset, terms };
        p.normalize();
        Ok(p)
    }

    pub fn mul_truncated(&self, other: &Poly, trunc: Truncation) -> Poly {
        self.try_mul_truncated(other, Some(trunc)).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        self.with_map(self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect())
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        self.with_map(self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.ring.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Drops terms whose degree over `trunc.mask` exceeds `trunc.cap`.
    pub fn truncate(&self, trunc: Truncation) -> Poly {
        self.with_map(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree_in(trunc.mask) <= trunc.cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Exchanges two variables.
    pub fn swap(&self, a: Var, b: Var) -> Poly {
        let f = |v: Var| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        };
        self.rename(f)
    }

    /// The operator exchanging `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Poly {
        self.swap(Var::x(i), Var::x(i + 1))
    }

    /// Whether the polynomial is symmetric in `x_i`, `x_{i+1}`.
    pub fn is_symmetric(&self, i: usize) -> bool {
        self.swap_vars(i) == *self
    }

    /// Applies a variable renaming; monomials that collide are summed, so
    /// `f` need not be injective.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Poly {
        let mut terms = TermMap::new();
        for (m, c) in &self.terms {
            add_term(&mut terms, m.rename(&f), c.clone());
        }
        self.with_map(terms)
    }

    /// Simultaneous substitution. In strict mode every variable of `self`
    /// must be bound (coefficient symbols other than beta excepted).
    pub fn substitute(&self, bindings: &BTreeMap<Var, Poly>, strict: bool) -> Result<Poly, PolyError> {
        self.substitute_impl(bindings, strict, None)
    }

    /// Substitution with every intermediate product truncated.
    pub fn substitute_truncated(&self, bindings: &BTreeMap<Var, Poly>, trunc: Truncation) -> Result<Poly, PolyError> {
        self.substitute_impl(bindings, false, Some(trunc))
    }

    fn substitute_impl(
        &self,
        bindings: &BTreeMap<Var, Poly>,
        strict: bool,
        trunc: Option<Truncation>,
    ) -> Result<Poly, PolyError> {
        if strict {
            for v in self.variables() {
                if !v.is_coefficient() && !bindings.contains_key(&v) {
                    return Err(PolyError::UnboundVariable(v.name()));
                }
            }
        }
        let named: Vec<Var> = bindings.keys().copied().filter(|v| matches!(v, Var::Named(_))).collect();
        // Substituting generators away also sheds the ones no term uses.
        let mut ring = if named.is_empty() {
            self.ring.clone()
        } else {
            self.ring.without(&named).keeping(&self.variables())
        };
        for p in bindings.values() {
            ring = ring.join(&p.ring)?;
        }
        if bindings.contains_key(&Var::Beta) && self.beta_offset != 0 {
            return Err(PolyError::Unsupported("substituting for b in a Laurent polynomial with nonzero offset".into()));
        }
        // Coefficient symbols that are substituted away may shrink the ring;
        // the caller retags if needed.
        let mut cache: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut acc = Poly::zero(ring.clone());
        acc.beta_offset = 0;
        let mut grouped: BTreeMap<Vec<(Var, u32)>, Vec<Term<'_>>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut bound = Vec::new();
            let mut free = Vec::new();
            for &(v, e) in m.pairs() {
                if bindings.contains_key(&v) {
                    bound.push((v, e));
                } else {
                    free.push((v, e));
                }
            }
            grouped.entry(bound).or_default().push((Monomial::from_pairs(free), c));
        }
        for (bound, frees) in grouped {
            let mut factor = Poly::one(ring.clone());
            for &(v, e) in &bound {
                let power = cache.entry((v, e)).or_insert_with(|| {
                    let base = &bindings[&v];
                    match trunc {
                        Some(t) => pow_truncated(base, e, t),
                        None => base.pow(e),
                    }
                });
                factor = match trunc {
                    Some(t) => factor.mul_truncated(power, t),
                    None => &factor * &*power,
                };
            }
            let rest = Poly::from_map_unchecked(ring.clone(), frees.into_iter().map(|(m, c)| (m, c.clone())).collect());
            let prod = match trunc {
                Some(t) => factor.mul_truncated(&rest, t),
                None => &factor * &rest,
            };
            acc += &prod;
        }
        if self.beta_offset != 0 {
            let mut off = Poly::one(CoeffRing::IntegersBetaLaurent);
            off.beta_offset = self.beta_offset;
            acc = acc.try_mul(&off)?;
        }
        Ok(acc)
    }

    /// Substitutes a single variable.
    pub fn subs(&self, v: Var, value: &Poly) -> Poly {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b, false).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Groups terms by their `mask` part: returns `mask-monomial -> coefficient
    /// polynomial` in the remaining variables.
    pub fn coefficients_in(&self, mask: VarMask) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, TermMap> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split_mask(mask);
            add_term(out.entry(inside).or_default(), outside, c.clone());
        }
        out.into_iter()
            .map(|(k, terms)| {
                let mut p = Poly { ring: self.ring.clone(), beta_offset: self.beta_offset, terms };
                p.normalize();
                (k, p)
            })
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Exact division. Signals `NonDivisible` when the remainder is nonzero.
    pub fn exact_div(&self, den: &Poly) -> Result<Poly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let ring = self.ring.join(&den.ring)?;
        let non_divisible = || PolyError::NonDivisible { num: self.to_string(), den: den.to_string() };
        let (lm, lc) = den.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.terms.clone();
        let mut quot = TermMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm).ok_or_else(non_divisible)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(non_divisible());
            }
            for (dm, dc) in &den.terms {
                add_term(&mut rem, dm.mul(&qm), -(dc * &qc));
            }
            debug_assert!(!rem.contains_key(&m));
            add_term(&mut quot, qm, qc);
        }
        let mut q = Poly { ring, beta_offset: self.beta_offset - den.beta_offset, terms: quot };
        if !q.ring.is_laurent() && q.beta_offset != 0 {
            return Err(non_divisible());
        }
        q.normalize();
        Ok(q)
    }

    /// Divides by `a - b` for variables `a`, `b` by synthetic division in
    /// `a`. Same contract as [`Poly::exact_div`].
    pub fn div_by_difference(&self, a: Var, b: Var) -> Result<Poly, PolyError> {
        // Write self = sum_k c_k a^k with c_k free of a. Then the quotient is
        // q_{k-1} = c_k + b q_k from the top, and the remainder c_0 + b q_0.
        let mut by_power: BTreeMap<u32, TermMap> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(a);
            add_term(by_power.entry(e).or_default(), rest, c.clone());
        }
        let Some(&top) = by_power.keys().next_back() else {
            return Ok(Poly::zero(self.ring.clone()));
        };
        let bm = Monomial::var(b);
        let mut quot = TermMap::new();
        let mut carry = TermMap::new();
        for k in (1..=top).rev() {
            // q_{k-1} = c_k + b * q_k, where carry holds q_k.
            let mut q = by_power.remove(&k).unwrap_or_default();
            for (m, c) in &carry {
                add_term(&mut q, m.mul(&bm), c.clone());
            }
            let ak = Monomial::var_pow(a, k - 1);
            for (m, c) in &q {
                add_term(&mut quot, m.mul(&ak), c.clone());
            }
            carry = q;
        }
        let mut rem = by_power.remove(&0).unwrap_or_default();
        for (m, c) in carry {
            add_term(&mut rem, m.mul(&bm), c);
        }
        if !rem.is_empty() {
            return Err(PolyError::NonDivisible {
                num: self.to_string(),
                den: format!("{a} - {b}"),
            });
        }
        Ok(self.with_map(quot))
    }

    /// Drops beta from the ring tag when no coefficient symbols remain.
    pub fn simplify_ring(&self) -> Poly {
        if self.beta_offset == 0 && !self.variables().iter().any(|v| v.is_coefficient()) {
            let mut p = self.clone();
            p.ring = CoeffRing::Integers;
            return p;
        }
        self.clone()
    }

    /// Maps each coefficient through `f` (terms mapping to zero vanish).
    pub fn map_coefficients(&self, f: impl Fn(&BigInt) -> BigInt) -> Poly {
        self.with_map(self.terms.iter().map(|(m, c)| (m.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Greatest common divisor of the integer coefficients (zero for 0).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Canonical rendering of each term in print order, as
    /// `(coefficient, monomial-with-offset)`.
    pub(crate) fn print_terms(&self) -> Vec<(BigInt, Monomial, i32)> {
        let mut terms: Vec<(BigInt, Monomial, i32)> = self
            .terms
            .iter()
            .map(|(m, c)| (c.clone(), m.clone(), m.exponent(Var::Beta) as i32 + self.beta_offset))
            .collect();
        terms.sort_by(print_cmp_with_offset);
        terms
    }
}

fn print_cmp_with_offset(a: &(BigInt, Monomial, i32), b: &(BigInt, Monomial, i32)) -> Ordering {
    a.1.print_cmp(&b.1)
}

pub(crate) fn pow_truncated(base: &Poly, e: u32, t: Truncation) -> Poly {
    let mut result = Poly::one(base.ring.clone());
    for _ in 0..e {
        result = result.mul_truncated(base, t);
        if result.is_zero() {
            break;
        }
    }
    result
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.beta_offset == other.beta_offset && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.beta_offset.hash(state);
        self.terms.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms).then(self.beta_offset.cmp(&other.beta_offset))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.beta_offset == rhs.beta_offset {
            self.ring = self.ring.join(&rhs.ring).unwrap_or_else(|e| panic!("{e}"));
            for (m, c) in &rhs.terms {
                add_term_ref(&mut self.terms, m, c);
            }
            self.normalize();
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self += &-rhs;
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            beta_offset: self.beta_offset,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Poly {
        Poly::int(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

/// Absolute value helper used by the printer.
pub(crate) fn abs_coeff(c: &BigInt) -> BigInt {
    c.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::x(i)
    }
    fn y(i: usize) -> Poly {
        Poly::y(i)
    }
    fn b() -> Poly {
        Poly::beta()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(arith(&(x(1) - y(1)), &y(1), ArithOp::Add).unwrap(), x(1));
        assert_eq!((x(1) + y(1)) * (x(1) - y(1)), x(1).pow(2) - y(1).pow(2));
        let one = Poly::int(1);
        assert_eq!((&one + &(b() * y(1))) * (&one - &(b() * y(1))), &one - &(b().pow(2) * y(1).pow(2)));
    }

    #[test]
    fn zero_has_no_terms() {
        let z = x(1) - x(1);
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let named = CoeffRing::named([("c1", 1)]);
        let c = Poly::var_in(named, Var::named("c1")).unwrap();
        assert!(matches!(c.try_add(&b()), Err(PolyError::RingMismatch(..))));
        assert!(Poly::var_in(CoeffRing::Integers, Var::Beta).is_err());
    }

    #[test]
    fn substitute_examples() {
        let mut bind = BTreeMap::new();
        bind.insert(Var::x(1), y(1));
        assert!((x(1) - y(1)).substitute(&bind, false).unwrap().is_zero());

        let p = x(1) + y(1) + b() * x(1) * y(1);
        assert_eq!(p.subs(Var::Beta, &Poly::int(0)), x(1) + y(1));
        assert_eq!((x(1) - y(1)).subs(Var::x(1), &y(2)), y(2) - y(1));
    }

    #[test]
    fn strict_substitution_flags_unbound() {
        let mut bind = BTreeMap::new();
        bind.insert(Var::x(1), y(1));
        let err = (x(1) + x(2)).substitute(&bind, true).unwrap_err();
        assert_eq!(err, PolyError::UnboundVariable("x2".into()));
    }

    #[test]
    fn swap_examples() {
        assert_eq!(x(1).swap_vars(1), x(2));
        assert_eq!((x(1) * x(2)).swap_vars(1), x(1) * x(2));
        assert_eq!((x(1).pow(2) + y(1)).swap_vars(1), x(2).pow(2) + y(1));
    }

    #[test]
    fn exact_div_examples() {
        let d = x(1) - x(2);
        assert_eq!((x(1).pow(2) - x(2).pow(2)).exact_div(&d).unwrap(), x(1) + x(2));
        let one = Poly::int(1);
        let num = (&one + &(b() * x(2))) * x(1) - (&one + &(b() * x(1))) * x(2);
        assert!(num.exact_div(&d).unwrap().is_one());
        assert!(matches!((x(1) - y(1)).exact_div(&d), Err(PolyError::NonDivisible { .. })));
        assert!(matches!(x(1).exact_div(&Poly::int(0)), Err(PolyError::DivisionByZero)));
        assert!(matches!(x(1).exact_div(&Poly::int(2)), Err(PolyError::NonDivisible { .. })));
    }

    #[test]
    fn synthetic_division_agrees() {
        let d = x(2) - x(3);
        let q = (x(1) + x(2).pow(3) * y(1) - b() * x(3)) * &d;
        assert_eq!(q.div_by_difference(Var::x(2), Var::x(3)).unwrap(), q.exact_div(&d).unwrap());
        assert!((x(2) + Poly::int(1)).div_by_difference(Var::x(2), Var::x(3)).is_err());
    }

    #[test]
    fn symmetric_examples() {
        assert!((x(1) + x(2)).is_symmetric(1));
        assert!(!x(1).is_symmetric(1));
        let f = |i| x(i) + y(1) + b() * x(i) * y(1);
        assert!((f(1) * f(2)).is_symmetric(1));
    }

    #[test]
    fn laurent_offsets() {
        let ring = CoeffRing::IntegersBetaLaurent;
        let bb = Poly::var_in(ring.clone(), Var::Beta).unwrap();
        let p = &bb * &x(1);
        assert_eq!(p.beta_offset(), 1);
        assert_eq!(p.len(), 1);
        let inv = Poly::one(ring.clone()).exact_div(&bb).unwrap();
        assert_eq!(inv.beta_offset(), -1);
        assert!((&inv * &bb).is_one());
        let sum = &inv + &Poly::int(1);
        assert_eq!(sum.beta_offset(), -1);
        assert_eq!((&sum * &bb), &Poly::int(1) + &bb);
    }
}
