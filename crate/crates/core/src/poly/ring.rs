use std::fmt;
use std::sync::Arc;

use super::var::Var;
use super::PolyError;

/// A named coefficient generator with its grade.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub grade: i32,
}

/// The coefficient ring a polynomial lives over.
///
/// Beta is modelled as a coefficient variable of grade -1. In
/// `IntegersBetaLaurent` it is invertible; negative powers are carried by a
/// single per-polynomial offset.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub enum CoeffRing {
    #[default]
    Integers,
    IntegersBeta,
    IntegersBetaLaurent,
    NamedPolynomial(Arc<Vec<Generator>>),
}

impl CoeffRing {
    pub fn named<I, S>(gens: I) -> CoeffRing
    where
        I: IntoIterator<Item = (S, i32)>,
        S: Into<String>,
    {
        let mut gens: Vec<Generator> = gens
            .into_iter()
            .map(|(name, grade)| Generator { name: name.into(), grade })
            .collect();
        gens.sort();
        gens.dedup();
        CoeffRing::NamedPolynomial(Arc::new(gens))
    }

    pub fn has_beta(&self) -> bool {
        matches!(self, CoeffRing::IntegersBeta | CoeffRing::IntegersBetaLaurent)
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, CoeffRing::IntegersBetaLaurent)
    }

    pub fn generators(&self) -> &[Generator] {
        match self {
            CoeffRing::NamedPolynomial(gens) => gens,
            _ => &[],
        }
    }

    /// Grade of a coefficient variable, if it belongs to this ring.
    pub fn grade(&self, var: Var) -> Option<i32> {
        match var {
            Var::Beta if self.has_beta() => Some(-1),
            Var::Named(_) => {
                let name = var.name();
                self.generators().iter().find(|g| g.name == name).map(|g| g.grade)
            }
            _ => None,
        }
    }

    /// The ring left after the named generators in `gone` are substituted
    /// away.
    pub fn without(&self, gone: &[Var]) -> CoeffRing {
        match self {
            CoeffRing::NamedPolynomial(gens) => {
                let names: Vec<String> = gone.iter().map(|v| v.name()).collect();
                let kept: Vec<_> = gens.iter().filter(|g| !names.contains(&g.name)).cloned().collect();
                if kept.is_empty() {
                    CoeffRing::Integers
                } else {
                    CoeffRing::NamedPolynomial(Arc::new(kept))
                }
            }
            r => r.clone(),
        }
    }

    /// Drops named generators outside `used`.
    pub fn keeping(&self, used: &[Var]) -> CoeffRing {
        match self {
            CoeffRing::NamedPolynomial(gens) => {
                let gone: Vec<Var> =
                    gens.iter().map(|g| Var::named(&g.name)).filter(|v| !used.contains(v)).collect();
                self.without(&gone)
            }
            r => r.clone(),
        }
    }

    /// Whether `var` may appear in a polynomial over this ring.
    pub fn admits(&self, var: Var) -> bool {
        match var {
            Var::Beta => self.has_beta(),
            Var::Named(_) => self.grade(var).is_some(),
            _ => true,
        }
    }

    /// Smallest ring both operands embed into.
    pub fn join(&self, other: &CoeffRing) -> Result<CoeffRing, PolyError> {
        use CoeffRing::*;
        match (self, other) {
            (a, b) if a == b => Ok(a.clone()),
            (Integers, b) => Ok(b.clone()),
            (a, Integers) => Ok(a.clone()),
            (IntegersBeta, IntegersBetaLaurent) | (IntegersBetaLaurent, IntegersBeta) => {
                Ok(IntegersBetaLaurent)
            }
            (NamedPolynomial(a), NamedPolynomial(b)) => {
                let clash = a.iter().any(|g| b.iter().any(|h| g.name == h.name && g.grade != h.grade));
                if clash {
                    return Err(PolyError::RingMismatch(self.to_string(), other.to_string()));
                }
                Ok(CoeffRing::named(a.iter().chain(b.iter()).map(|g| (g.name.clone(), g.grade))))
            }
            (a, b) => Err(PolyError::RingMismatch(a.to_string(), b.to_string())),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => f.write_str("ZZ"),
            CoeffRing::IntegersBeta => f.write_str("ZZ[b]"),
            CoeffRing::IntegersBetaLaurent => f.write_str("ZZ[b,1/b]"),
            CoeffRing::NamedPolynomial(gens) => {
                let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
                write!(f, "ZZ[{}]", names.join(","))
            }
        }
    }
}
