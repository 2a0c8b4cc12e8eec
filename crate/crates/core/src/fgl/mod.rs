//! Formal group laws as truncated bivariate series in `u`, `v`.

mod axioms;
mod file;
mod lazard;

pub use axioms::{verify_axioms, AxiomCheck, AxiomReport};
pub use file::{law_from_json, law_to_json, FglFileError};
pub use lazard::{free_law_series, lazard_generator, lazard_relations};

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{series_inverse, CoeffRing, Monomial, Poly, PolyError, TruncSeries, Truncation, Var, VarMask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FglError {
    #[error("coefficient table is not symmetric at ({0},{1})")]
    NotSymmetric(u32, u32),
    #[error("unit axiom violated: {0}")]
    Unit(String),
    #[error("law is only known up to degree {0}; evaluate in truncated mode")]
    NeedsTruncation(u32),
    #[error("argument {0} has a nonzero constant term")]
    ConstantTerm(String),
    #[error("cofactor of F(u, chi(v)) is not a unit: {0}")]
    NonUnitCofactor(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LawKind {
    Additive,
    Multiplicative,
    Custom,
}

pub(crate) const SERIES_MASK: VarMask = VarMask::AUX;

pub(crate) fn aux_trunc(cap: u32) -> Truncation {
    Truncation::new(cap, SERIES_MASK)
}

/// `F(u,v) = sum a_ij u^i v^j`, stored up to total degree `cap` in `u, v`.
///
/// A law is *polynomial* when the stored terms are the whole law (the
/// additive and multiplicative laws); otherwise it is known only modulo
/// degree `cap + 1`.
#[derive(Clone, Debug)]
pub struct FormalGroupLaw {
    kind: LawKind,
    series: Poly,
    cap: u32,
    polynomial: bool,
    chi: OnceLock<Poly>,
}

pub const DEFAULT_CAP: u32 = 8;

impl FormalGroupLaw {
    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            LawKind::Additive => "additive",
            LawKind::Multiplicative => "multiplicative",
            LawKind::Custom => "custom",
        }
    }

    pub fn series(&self) -> &Poly {
        &self.series
    }

    pub fn ring(&self) -> &CoeffRing {
        self.series.ring()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    pub fn truncation(&self) -> Truncation {
        aux_trunc(self.cap)
    }

    /// The coefficient `a_ij`.
    pub fn coefficient(&self, i: u32, j: u32) -> Poly {
        let m = Monomial::from_pairs([(Var::U, i), (Var::V, j)]);
        self.series
            .coefficients_in(SERIES_MASK)
            .remove(&m)
            .unwrap_or_else(|| Poly::zero(self.ring().clone()))
    }

    /// Same law with a different cap. Polynomial laws keep every term
    /// when the new cap is at least their degree.
    pub fn with_cap(&self, cap: u32) -> FormalGroupLaw {
        let degree = self.series.degree_in(SERIES_MASK).unwrap_or(0);
        let polynomial = self.polynomial && degree <= cap;
        FormalGroupLaw {
            kind: self.kind,
            series: self.series.truncate(aux_trunc(cap)),
            cap,
            polynomial,
            chi: OnceLock::new(),
        }
    }

    /// A law from an arbitrary series, without precondition checks. Used to
    /// exercise [`verify_axioms`] on non-laws.
    pub fn from_series_unchecked(series: Poly, cap: u32) -> FormalGroupLaw {
        FormalGroupLaw {
            kind: LawKind::Custom,
            series: series.truncate(aux_trunc(cap)),
            cap,
            polynomial: false,
            chi: OnceLock::new(),
        }
    }

    /// `chi` up to the law's cap, computed once.
    pub fn chi(&self) -> Result<TruncSeries, FglError> {
        if let Some(c) = self.chi.get() {
            return Ok(TruncSeries::new(c.clone(), self.truncation()));
        }
        let c = self.chi_to(self.cap)?;
        let _ = self.chi.set(c.poly().clone());
        Ok(c)
    }

    /// `chi(u)` with `chi(0) = 0` and `F(u, chi(u)) = 0` up to degree `cap`,
    /// solved one degree at a time.
    ///
    /// Polynomial laws are exact in every degree, so their inverse can be
    /// expanded past the stored cap; other laws stop at it.
    pub fn chi_to(&self, cap: u32) -> Result<TruncSeries, FglError> {
        let cap = if self.polynomial { cap } else { cap.min(self.cap) };
        let u = Poly::var(Var::U);
        let ring = self.ring().clone();
        let mut chi = (-&u).with_ring(ring.clone())?;
        if !self.series.truncate(aux_trunc(1)).try_sub(&(&u + &Poly::var(Var::V)))?.is_zero() {
            return Err(FglError::Unit(format!("linear part of F is not u + v: {}", self.series.truncate(aux_trunc(1)))));
        }
        for k in 2..=cap {
            let t = aux_trunc(k);
            let g = self.series.substitute_truncated(&bind(Var::V, &chi), t)?;
            let lower = g.truncate(aux_trunc(k - 1));
            if !lower.is_zero() {
                return Err(FglError::Unit(format!("F(u, chi(u)) has nonzero terms below degree {k}: {lower}")));
            }
            let c = g
                .coefficients_in(SERIES_MASK)
                .remove(&Monomial::var_pow(Var::U, k))
                .unwrap_or_else(|| Poly::zero(ring.clone()));
            chi = chi.try_sub(&c.mul_monomial(&Monomial::var_pow(Var::U, k)))?;
        }
        let check = self.series.substitute_truncated(&bind(Var::V, &chi), aux_trunc(cap))?;
        assert!(check.is_zero(), "chi back-substitution left {check}");
        assert_eq!(chi.coefficient(&Monomial::var(Var::U)), -BigInt::one());
        Ok(TruncSeries::new(chi, aux_trunc(cap)))
    }

    /// `U(u,v)` with `F(u, chi(v)) = (u - v) U(u,v)`, known up to degree
    /// `cap - 1`. `U(0,0) = 1` for every law.
    pub fn cofactor(&self) -> Result<TruncSeries, FglError> {
        let chi_v = self.chi()?.poly().rename(|v| if v == Var::U { Var::V } else { v });
        let g = self.series.substitute_truncated(&bind(Var::V, &chi_v), self.truncation())?;
        let u = g.div_by_difference(Var::U, Var::V)?;
        let t = aux_trunc(self.cap.saturating_sub(1));
        let u = TruncSeries::new(u, t);
        let c = u.homogeneous_part(0);
        if !c.is_one() {
            return Err(FglError::NonUnitCofactor(c.to_string()));
        }
        Ok(u)
    }

    /// `U^{-1}(u,v)` up to degree `cap - 1`; a polynomial for the additive
    /// (`1`) and multiplicative (`1 - b v`) laws.
    pub fn cofactor_inverse(&self) -> Result<TruncSeries, FglError> {
        Ok(series_inverse(&self.cofactor()?)?)
    }

    /// `F(p, q)`. With a truncation every intermediate product is truncated;
    /// without one the law must be polynomial and the arguments must have
    /// zero constant term.
    pub fn apply(&self, p: &Poly, q: &Poly, trunc: Option<Truncation>) -> Result<Poly, FglError> {
        let mut b = bind(Var::U, p);
        b.insert(Var::V, q.clone());
        match trunc {
            Some(t) => Ok(self.series.substitute_truncated(&b, t)?),
            None => {
                for a in [p, q] {
                    if !a.constant_term().is_zero() {
                        return Err(FglError::ConstantTerm(a.to_string()));
                    }
                }
                if !self.polynomial {
                    return Err(FglError::NeedsTruncation(self.cap));
                }
                Ok(self.series.substitute(&b, false)?)
            }
        }
    }

    /// `chi(p)`, truncated. For the additive law this is exactly `-p`.
    pub fn chi_of(&self, p: &Poly, trunc: Truncation) -> Result<Poly, FglError> {
        if self.kind == LawKind::Additive {
            return Ok(-p);
        }
        let chi = if self.polynomial && trunc.cap > self.cap { self.chi_to(trunc.cap)? } else { self.chi()? };
        Ok(chi.poly().substitute_truncated(&bind(Var::U, p), trunc)?)
    }
}

pub(crate) fn bind(v: Var, p: &Poly) -> BTreeMap<Var, Poly> {
    let mut b = BTreeMap::new();
    b.insert(v, p.clone());
    b
}

/// `F_a(u,v) = u + v`.
pub fn make_additive() -> FormalGroupLaw {
    FormalGroupLaw {
        kind: LawKind::Additive,
        series: Poly::var(Var::U) + Poly::var(Var::V),
        cap: DEFAULT_CAP,
        polynomial: true,
        chi: OnceLock::new(),
    }
}

/// `F_m(u,v) = u + v - b u v`.
pub fn make_multiplicative() -> FormalGroupLaw {
    let (u, v) = (Poly::var(Var::U), Poly::var(Var::V));
    FormalGroupLaw {
        kind: LawKind::Multiplicative,
        series: &u + &v - Poly::beta() * &u * &v,
        cap: DEFAULT_CAP,
        polynomial: true,
        chi: OnceLock::new(),
    }
}

/// A law from its coefficients `a_ij`, checked for symmetry and the unit
/// conditions but not for associativity.
pub fn make_from_coeffs(table: &BTreeMap<(u32, u32), Poly>, cap: u32) -> Result<FormalGroupLaw, FglError> {
    let mut ring = CoeffRing::Integers;
    for c in table.values() {
        ring = ring.join(c.ring())?;
    }
    let get = |i: u32, j: u32| table.get(&(i, j)).cloned().unwrap_or_else(|| Poly::zero(CoeffRing::Integers));
    for &(i, j) in table.keys() {
        if get(i, j) != get(j, i) {
            return Err(FglError::NotSymmetric(i, j));
        }
        if j == 0 && i != 1 && !get(i, 0).is_zero() {
            return Err(FglError::Unit(format!("a_({i},0) = {} must vanish", get(i, 0))));
        }
    }
    if !get(1, 0).is_one() {
        return Err(FglError::Unit(format!("a_(1,0) = {} must be 1", get(1, 0))));
    }
    let mut series = Poly::zero(ring.clone());
    for (&(i, j), c) in table {
        if i + j <= cap {
            series = series.try_add(&c.mul_monomial(&Monomial::from_pairs([(Var::U, i), (Var::V, j)])))?;
        }
    }
    let series = series.with_ring(ring)?;
    let degree = series.degree_in(SERIES_MASK).unwrap_or(0);
    let standard = standard_kind(&series);
    Ok(FormalGroupLaw {
        kind: standard.unwrap_or(LawKind::Custom),
        polynomial: standard.is_some() && degree <= cap,
        series,
        cap,
        chi: OnceLock::new(),
    })
}

fn standard_kind(series: &Poly) -> Option<LawKind> {
    if *series == *make_additive().series() {
        Some(LawKind::Additive)
    } else if *series == *make_multiplicative().series() {
        Some(LawKind::Multiplicative)
    } else {
        None
    }
}
