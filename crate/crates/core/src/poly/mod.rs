//! Exact sparse multivariate polynomials and truncated power series.
//!
//! Every coefficient is an arbitrary-precision integer. Beta and named
//! coefficient generators (the `a_{ij}` of a free formal group law) are
//! ordinary variables tagged as coefficient symbols; the [`CoeffRing`] tag
//! records which of them a polynomial may contain.

mod json;
mod monomial;
#[allow(clippy::module_inception)]
mod poly;
mod ring;
mod series;
mod text;
mod var;

pub use json::{PolyJson, TermJson};
pub use monomial::Monomial;
pub use poly::{arith, ArithOp, Poly};
pub use ring::{CoeffRing, Generator};
pub use series::{series_inverse, TruncSeries, Truncation};
pub use text::{parse_poly, parse_poly_in};
pub use var::{Var, VarClass, VarMask};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("variable {0} does not belong to ring {1}")]
    ForeignVariable(String, String),
    #[error("NON-DIVISIBLE: {num} is not divisible by {den}")]
    NonDivisible { num: String, den: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("unbound variable {0} in strict substitution")]
    UnboundVariable(String),
    #[error("series constant term {0} is not a unit")]
    NonUnit(String),
    #[error("truncation mismatch: caps {0} and {1}")]
    TruncationMismatch(String, String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}
