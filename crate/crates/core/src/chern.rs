//! Chern-root calculus over a formal group law.
//!
//! Top Chern classes are kept as multisets of first-Chern-class factors and
//! only expanded on request, so the Whitney ratio `c(M) / c(M')` is an exact
//! multiset difference.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fgl::{FglError, FormalGroupLaw, LawKind};
use crate::poly::{Poly, Truncation, Var, VarMask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("expected a {expected:?} bundle, got {got:?}")]
    Flavor { expected: Flavor, got: Flavor },
    #[error("factor {0} is missing from the dividend")]
    NotContained(String),
    #[error("{0} law has no exact inverse series; use a truncation")]
    NeedsTruncation(&'static str),
    #[error(transparent)]
    Fgl(#[from] FglError),
}

/// Whether the roots come from a flag of quotients or of subbundles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    QuotientFlag,
    SubFlag,
}

/// Exact polynomial evaluation, or a truncated series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Evaluation {
    Exact,
    Truncated(Truncation),
}

impl Evaluation {
    pub fn trunc(self) -> Option<Truncation> {
        match self {
            Evaluation::Exact => None,
            Evaluation::Truncated(t) => Some(t),
        }
    }

    /// Truncation in the `y` degree only; exact in `x` for the
    /// multiplicative law.
    pub fn ck(cap: u32) -> Evaluation {
        Evaluation::Truncated(Truncation::new(cap, VarMask::Y))
    }

    /// Truncation in the total `x, y` degree.
    pub fn total(cap: u32) -> Evaluation {
        Evaluation::Truncated(Truncation::new(cap, VarMask::X | VarMask::Y))
    }
}

/// Default cap for CK expansions in `S_n`: the largest total degree of a
/// product that appears.
pub fn default_ck_cap(n: usize) -> u32 {
    (n * n.saturating_sub(1)).max(1) as u32
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootedBundle {
    roots: Vec<Poly>,
    flavor: Flavor,
}

impl RootedBundle {
    pub fn new(roots: Vec<Poly>, flavor: Flavor) -> RootedBundle {
        RootedBundle { roots, flavor }
    }

    /// The trivial line bundle: its one root is zero.
    pub fn trivial_line() -> RootedBundle {
        RootedBundle { roots: vec![Poly::int(0)], flavor: Flavor::QuotientFlag }
    }

    /// `Q_m` with roots `x_1..x_m`.
    pub fn quotient(m: usize) -> RootedBundle {
        RootedBundle { roots: (1..=m).map(Poly::x).collect(), flavor: Flavor::QuotientFlag }
    }

    /// `V_l` with roots `y_1..y_l`.
    pub fn sub(l: usize) -> RootedBundle {
        RootedBundle { roots: (1..=l).map(Poly::y).collect(), flavor: Flavor::SubFlag }
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Poly] {
        &self.roots
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `c_t = prod (1 + root t)`.
    pub fn chern_polynomial(&self) -> Poly {
        let t = Poly::var(Var::T);
        self.roots.iter().fold(Poly::int(1), |acc, r| acc * (Poly::int(1) + r * &t))
    }

    pub fn top_chern(&self) -> FactorProduct {
        FactorProduct::new(self.roots.iter().cloned())
    }
}

/// A product of first Chern classes kept as a multiset.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactorProduct {
    factors: BTreeMap<Poly, usize>,
}

impl FactorProduct {
    pub fn new<I: IntoIterator<Item = Poly>>(factors: I) -> FactorProduct {
        let mut out = FactorProduct::default();
        for f in factors {
            *out.factors.entry(f).or_default() += 1;
        }
        out
    }

    /// Number of factors counted with multiplicity.
    pub fn len(&self) -> usize {
        self.factors.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Poly, usize)> {
        self.factors.iter().map(|(p, &k)| (p, k))
    }

    pub fn mul(&self, other: &FactorProduct) -> FactorProduct {
        let mut out = self.clone();
        for (p, &k) in &other.factors {
            *out.factors.entry(p.clone()).or_default() += k;
        }
        out
    }

    /// Multiset difference; fails unless `other` is contained in `self`.
    pub fn divide(&self, other: &FactorProduct) -> Result<FactorProduct, ChernError> {
        let mut out = self.clone();
        for (p, &k) in &other.factors {
            match out.factors.get_mut(p) {
                Some(have) if *have >= k => {
                    *have -= k;
                    if *have == 0 {
                        out.factors.remove(p);
                    }
                }
                _ => return Err(ChernError::NotContained(p.to_string())),
            }
        }
        Ok(out)
    }

    pub fn expand(&self, eval: Evaluation) -> Poly {
        let mut acc = Poly::int(1);
        for (p, &k) in &self.factors {
            for _ in 0..k {
                acc = match eval {
                    Evaluation::Exact => &acc * p,
                    Evaluation::Truncated(t) => acc.mul_truncated(p, t),
                };
            }
        }
        acc
    }
}

fn chi_of(law: &FormalGroupLaw, p: &Poly, eval: Evaluation) -> Result<Poly, ChernError> {
    match eval {
        Evaluation::Exact if law.kind() == LawKind::Additive => Ok(-p),
        Evaluation::Exact => Err(ChernError::NeedsTruncation(law.name())),
        Evaluation::Truncated(t) => Ok(law.chi_of(p, t)?),
    }
}

fn law_apply(law: &FormalGroupLaw, p: &Poly, q: &Poly, eval: Evaluation) -> Result<Poly, ChernError> {
    Ok(law.apply(p, q, eval.trunc())?)
}

/// Roots of the dual of a subbundle flag: `chi(root)`.
pub fn chern_dual(e: &RootedBundle, law: &FormalGroupLaw, eval: Evaluation) -> Result<RootedBundle, ChernError> {
    if e.flavor != Flavor::SubFlag {
        return Err(ChernError::Flavor { expected: Flavor::SubFlag, got: e.flavor });
    }
    let roots = e.roots.iter().map(|r| chi_of(law, r, eval)).collect::<Result<_, _>>()?;
    Ok(RootedBundle { roots, flavor: Flavor::QuotientFlag })
}

/// Top Chern class of `E (x) F`: the factors `F(x_i, y_j)`.
pub fn chern_tensor(e: &RootedBundle, f: &RootedBundle, law: &FormalGroupLaw, eval: Evaluation) -> Result<FactorProduct, ChernError> {
    let mut out = Vec::with_capacity(e.rank() * f.rank());
    for x in &e.roots {
        for y in &f.roots {
            out.push(law_apply(law, x, y, eval)?);
        }
    }
    Ok(FactorProduct::new(out))
}

/// Top Chern class of `Hom(E_sub, F_quot)`: the factors `F(x_k, chi(y_l))`
/// for quotient roots `x_k` and subbundle roots `y_l`.
pub fn chern_hom(e_sub: &RootedBundle, f_quot: &RootedBundle, law: &FormalGroupLaw, eval: Evaluation) -> Result<FactorProduct, ChernError> {
    if f_quot.flavor != Flavor::QuotientFlag {
        return Err(ChernError::Flavor { expected: Flavor::QuotientFlag, got: f_quot.flavor });
    }
    let dual = chern_dual(e_sub, law, eval)?;
    chern_tensor(f_quot, &dual, law, eval)
}

/// `c(M)` for `M = (+)_{l=1}^{n-1} Hom(V_l, Q_{n-l})`.
pub fn whitney_m(n: usize, law: &FormalGroupLaw, eval: Evaluation) -> Result<FactorProduct, ChernError> {
    let mut acc = FactorProduct::default();
    for l in 1..n {
        acc = acc.mul(&chern_hom(&RootedBundle::sub(l), &RootedBundle::quotient(n - l), law, eval)?);
    }
    Ok(acc)
}

/// `c(M')` for `M' = (+)_{l=1}^{n-2} Hom(V_l, Q_{n-l-1})`.
pub fn whitney_m_prime(n: usize, law: &FormalGroupLaw, eval: Evaluation) -> Result<FactorProduct, ChernError> {
    let mut acc = FactorProduct::default();
    for l in 1..n.saturating_sub(1) {
        acc = acc.mul(&chern_hom(&RootedBundle::sub(l), &RootedBundle::quotient(n - l - 1), law, eval)?);
    }
    Ok(acc)
}

/// `{F(x_k, chi(y_j)) : k + j <= n}`.
pub fn closed_form_factors(n: usize, law: &FormalGroupLaw, eval: Evaluation) -> Result<FactorProduct, ChernError> {
    let mut out = Vec::new();
    for k in 1..n {
        for j in 1..=n - k {
            let chi = chi_of(law, &Poly::y(j), eval)?;
            out.push(law_apply(law, &Poly::x(k), &chi, eval)?);
        }
    }
    Ok(FactorProduct::new(out))
}

/// Top Chern class of the kernel bundle `K = ker(M -> M')` as the Whitney
/// ratio `c(M) / c(M')`.
pub fn kernel_top_chern(n: usize, law: &FormalGroupLaw, eval: Evaluation) -> Result<FactorProduct, ChernError> {
    let k = whitney_m(n, law, eval)?.divide(&whitney_m_prime(n, law, eval)?)?;
    assert_eq!(k.len(), n * (n - 1) / 2, "rank of the kernel bundle");
    assert_eq!(k, closed_form_factors(n, law, eval)?, "kernel factors differ from the closed form");
    Ok(k)
}

/// The class of the smallest Schubert variety, expanded.
pub fn bott_base_class(n: usize, law: &FormalGroupLaw, eval: Evaluation) -> Result<Poly, ChernError> {
    Ok(kernel_top_chern(n, law, eval)?.expand(eval))
}
