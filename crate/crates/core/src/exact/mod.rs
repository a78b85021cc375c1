//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! Sines and cosines of rational multiples of π are exact field elements, so
//! an identity between such expressions is checked by comparing reduced
//! coefficient vectors.

mod cyclo;
mod eval;
pub(crate) mod poly;
mod trig;

pub use cyclo::{arith, cyclo_context, ArithOp, CycloContext, CycloElem, DEFAULT_DEGREE_CAP};
pub use eval::{
    eval_exact, eval_exact_fraction, eval_exact_in, required_order, Fraction, MAX_SUM_TERMS,
};
pub use poly::{cyclotomic_polynomial, divisors, euler_phi};
pub use trig::{cos_pi_in, cos_pi_rational, sin_pi_in, sin_pi_rational, trig_order};

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("field order must be at least 1")]
    InvalidOrder,
    #[error("Q(zeta_{order}) has degree {phi}, above the cap of {cap}")]
    CapExceeded { order: u64, phi: usize, cap: usize },
    #[error("elements of Q(zeta_{left}) and Q(zeta_{right}) cannot be combined")]
    MixedOrders { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not rational")]
    NotRational,
    #[error("angle {angle}·pi is not representable in Q(zeta_{order})")]
    AngleNotInField { angle: String, order: u64 },
    #[error("unbound variable '{0}'")]
    UnboundVariable(String),
    #[error("'{0}' is not a rational multiple of pi")]
    NonRationalAngle(String),
    #[error("summation bound '{0}' is not an integer")]
    NonIntegerBound(String),
    #[error("'{0}' involves pi outside sin/cos and has no exact cyclotomic value")]
    Transcendental(String),
    #[error("summation with {0} terms exceeds the limit")]
    SumTooLong(u64),
}
