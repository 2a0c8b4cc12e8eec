//! Exact Schubert calculus over formal group laws.
//!
//! Double Schubert, Grothendieck and beta-polynomials, formal group laws
//! as truncated series, Chern-root products, push-forward classes of
//! Bott-Samelson resolutions in flag bundles, and numeric shadows of
//! degeneracy-locus rank conditions. All arithmetic is exact.

pub mod chern;
pub mod degeneracy;
pub mod exec;
pub mod fgl;
pub mod flag;
pub mod perm;
pub mod poly;
pub mod schubert;
pub mod verify;
