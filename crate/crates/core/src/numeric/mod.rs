//! Multiprecision real and complex evaluation, residues of the contour
//! kernels by circle quadrature, and rectangle contour integrals.
//!
//! Precision is requested in decimal digits; internally every computation
//! carries 15 extra digits plus a few guard bits.

mod complex;
mod contour;
mod eval;
mod float;
mod kernel;
mod residue;

pub use complex::BigComplex;
pub use contour::{
    gauss_legendre, integrate_segment, rectangle_contour_breakdown, rectangle_contour_integral,
    ContourResult, GaussLegendre, SegmentIntegral, GL_ORDER,
};
pub use eval::{cyclo_to_complex, eval_numeric, numeric_bindings, NumBindings};
pub use float::BigFloat;
pub use kernel::{KernelId, KernelSpec};
pub use residue::{
    all_residues, matches_real, residue_2pii, residue_sum, ResidueResult, MAX_CIRCLE_POINTS,
};

/// Working precision when none is requested.
pub const DEFAULT_DIGITS: u32 = 40;
/// Smallest accepted precision.
pub const MIN_DIGITS: u32 = 10;

/// Mantissa bits used for a request of `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64 + 15.0) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

pub(crate) fn check_digits(digits: u32) -> Result<(), NumericError> {
    if digits < MIN_DIGITS {
        Err(NumericError::PrecisionTooLow(digits))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("precision of {0} digits is below the minimum of 10")]
    PrecisionTooLow(u32),
    #[error("unbound variable '{0}'")]
    UnboundVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("summation bound '{0}' is not an integer")]
    NonIntegerBound(String),
    #[error("summation with {0} terms exceeds the limit")]
    SumTooLong(u64),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("a quadrature node landed on a pole")]
    PoleOnGrid,
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
