//! Exact and multiprecision verification of finite trigonometric sum
//! identities.
//!
//! - [`expr`]: a small DSL for sums of sine and cosine quotients.
//! - [`exact`]: arithmetic in cyclotomic fields `Q(ζ_m)`, where `sin(aπ/q)`
//!   and `cos(aπ/q)` are exact elements.
//! - [`numeric`]: multiprecision evaluation, kernel residues and contour
//!   integrals.
//! - [`catalog`]: the identities as data, with hypotheses and verification.
//! - [`cyclotomy`]: quadratic residues, Gauss sums and period polynomials.

pub mod catalog;
pub mod cyclotomy;
pub mod exact;
pub mod expr;
pub mod numeric;
