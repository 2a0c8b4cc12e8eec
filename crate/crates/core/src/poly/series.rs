use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::Poly;
use super::var::{Var, VarMask};
use super::{CoeffRing, Monomial, PolyError};

/// Degree cap for truncated series: terms whose degree, counted over the
/// variables in `mask`, exceeds `cap` are dropped.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Truncation {
    pub cap: u32,
    pub mask: VarMask,
}

impl Truncation {
    pub fn new(cap: u32, mask: VarMask) -> Truncation {
        Truncation { cap, mask }
    }

    /// Cap counting every non-coefficient variable.
    pub fn total(cap: u32) -> Truncation {
        Truncation { cap, mask: VarMask::ALL }
    }

    pub fn lowered(self, by: u32) -> Truncation {
        Truncation { cap: self.cap.saturating_sub(by), mask: self.mask }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.cap + 1)
    }
}

/// A power series known up to (and including) degree `trunc.cap`.
/// Arithmetic re-truncates eagerly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    poly: Poly,
    trunc: Truncation,
}

impl TruncSeries {
    pub fn new(poly: Poly, trunc: Truncation) -> TruncSeries {
        TruncSeries { poly: poly.truncate(trunc), trunc }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn cap(&self) -> u32 {
        self.trunc.cap
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check(&self, other: &TruncSeries) -> Result<Truncation, PolyError> {
        if self.trunc.mask != other.trunc.mask {
            return Err(PolyError::TruncationMismatch(format!("{:?}", self.trunc), format!("{:?}", other.trunc)));
        }
        Ok(Truncation { cap: self.trunc.cap.min(other.trunc.cap), mask: self.trunc.mask })
    }

    pub fn try_add(&self, other: &TruncSeries) -> Result<TruncSeries, PolyError> {
        let t = self.check(other)?;
        Ok(TruncSeries::new(self.poly.try_add(&other.poly)?, t))
    }

    pub fn try_sub(&self, other: &TruncSeries) -> Result<TruncSeries, PolyError> {
        let t = self.check(other)?;
        Ok(TruncSeries::new(self.poly.try_sub(&other.poly)?, t))
    }

    pub fn try_mul(&self, other: &TruncSeries) -> Result<TruncSeries, PolyError> {
        let t = self.check(other)?;
        Ok(TruncSeries { poly: self.poly.try_mul_truncated(&other.poly, Some(t))?, trunc: t })
    }

    pub fn mul_poly(&self, p: &Poly) -> TruncSeries {
        TruncSeries { poly: self.poly.mul_truncated(p, self.trunc), trunc: self.trunc }
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries { poly: -&self.poly, trunc: self.trunc }
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        TruncSeries { poly: super::poly::pow_truncated(&self.poly, e, self.trunc), trunc: self.trunc }
    }

    /// Part of degree exactly `d` over the mask.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let ring = self.poly.ring().clone();
        let terms = self
            .poly
            .terms()
            .filter(|(m, _)| m.degree_in(self.trunc.mask) == d)
            .map(|(m, c)| (m.clone(), c.clone()));
        let mut p = Poly::from_map_unchecked(ring, terms.collect());
        if self.poly.beta_offset() != 0 {
            p = p.try_mul(&beta_power(self.poly.beta_offset())).expect("laurent");
        }
        p
    }
}

pub(crate) fn beta_power(k: i32) -> Poly {
    let ring = CoeffRing::IntegersBetaLaurent;
    let b = Poly::var_in(ring.clone(), Var::Beta).unwrap();
    if k >= 0 {
        b.pow(k as u32)
    } else {
        Poly::one(ring).exact_div(&b.pow((-k) as u32)).unwrap()
    }
}

/// Inverse of a series whose constant part (degree zero over the mask) is a
/// unit: `1`, `-1`, or in the Laurent ring `±b^k`.
pub fn series_inverse(s: &TruncSeries) -> Result<TruncSeries, PolyError> {
    let t = s.trunc;
    let constant = s.homogeneous_part(0);
    let unit_inverse = constant_unit_inverse(&constant)?;
    // s = c (1 + r) with r = c^{-1} (s - c) of order >= 1.
    let rest = s.poly.try_sub(&constant)?;
    let r = rest.try_mul(&unit_inverse)?;
    let neg_r = -&r;
    let mut inv = Poly::one(s.poly.ring().clone());
    let mut power = Poly::one(s.poly.ring().clone());
    for _ in 0..t.cap {
        power = power.mul_truncated(&neg_r, t);
        if power.is_zero() {
            break;
        }
        inv += &power;
    }
    Ok(TruncSeries::new(inv.try_mul(&unit_inverse)?, t))
}

fn constant_unit_inverse(c: &Poly) -> Result<Poly, PolyError> {
    let non_unit = || PolyError::NonUnit(c.to_string());
    if c.len() != 1 {
        return Err(non_unit());
    }
    let (m, coeff) = c.terms().next().unwrap();
    let sign = if coeff.is_one() {
        1
    } else if *coeff == -BigInt::one() {
        -1
    } else {
        return Err(non_unit());
    };
    let k = m.exponent(Var::Beta) as i32 + c.beta_offset();
    let rest_is_beta_only = *m == Monomial::var_pow(Var::Beta, m.exponent(Var::Beta));
    if !rest_is_beta_only {
        return Err(non_unit());
    }
    if k == 0 {
        return Ok(Poly::constant(c.ring().clone(), sign));
    }
    if !c.ring().is_laurent() {
        return Err(non_unit());
    }
    Ok(beta_power(-k).scale(&BigInt::from(sign)))
}

impl TruncSeries {
    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.poly.coefficient(m)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.poly, self.trunc)
    }
}
