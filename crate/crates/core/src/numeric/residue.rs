use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{bits_for_digits, check_digits, BigComplex, BigFloat, KernelSpec, NumericError};

/// Largest number of circle nodes tried before giving up.
pub const MAX_CIRCLE_POINTS: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct ResidueResult {
    pub pole: BigRational,
    /// Pole order from the zero structure of the kernel's factors.
    pub order: u32,
    /// `2πi · Res_{z=pole} f`.
    pub value: BigComplex,
    pub points: usize,
    /// Change between the last two doublings.
    pub convergence: BigFloat,
}

/// `2πi·R` at `pole` by the trapezoid rule on the circle `|z - pole| = radius`.
///
/// Starts from `points` nodes and doubles (reusing earlier nodes) until two
/// successive values agree to `10^-(digits-10)`.
pub fn residue_2pii(
    spec: &KernelSpec,
    pole: &BigRational,
    radius: &BigRational,
    points: usize,
    digits: u32,
) -> Result<ResidueResult, NumericError> {
    check_digits(digits)?;
    let quarter = BigRational::new(1.into(), 4.into());
    if !radius.is_positive() || *radius > quarter {
        return Err(NumericError::InvalidArgument(format!(
            "radius must lie in (0, 1/4], got {radius}"
        )));
    }
    if points < 16 || !points.is_power_of_two() {
        return Err(NumericError::InvalidArgument(format!(
            "points must be a power of two at least 16, got {points}"
        )));
    }
    let prec = bits_for_digits(digits);
    let tol = BigFloat::ten_pow_neg(digits - 10, prec);
    let tiny = BigFloat::ten_pow_neg(digits, prec);
    let center = BigComplex::from_real(BigFloat::from_rational(pole, prec));
    let r = BigFloat::from_rational(radius, prec);
    let two_pi = BigFloat::pi(prec).mul_pow2(1);
    let two_pi_i = BigComplex::new(BigFloat::zero(prec), two_pi.clone());

    // g(θ_k) = f(a + r e^{iθ_k}) r e^{iθ_k}, θ_k = 2πk/m
    let node = |k: usize, m: usize| -> Result<BigComplex, NumericError> {
        let theta = two_pi.mul_int(k as i64).div_int(m as i64);
        let (s, c) = theta.sin_cos();
        let w = BigComplex::new(&r * &c, &r * &s);
        let f = spec.eval(&(&center + &w), &tiny)?;
        Ok(&f * &w)
    };

    let mut m = points;
    let mut sum = BigComplex::zero(prec);
    for k in 0..m {
        sum = &sum + &node(k, m)?;
    }
    let mut value = (&two_pi_i * &sum).scale(&BigFloat::one(prec).div_int(m as i64));
    loop {
        let next_m = 2 * m;
        if next_m > MAX_CIRCLE_POINTS {
            return Err(NumericError::NoConvergence(format!(
                "residue at {pole} after {m} circle points"
            )));
        }
        for k in (1..next_m).step_by(2) {
            sum = &sum + &node(k, next_m)?;
        }
        let next = (&two_pi_i * &sum).scale(&BigFloat::one(prec).div_int(next_m as i64));
        let change = (&next - &value).abs();
        m = next_m;
        value = next;
        if change <= tol {
            return Ok(ResidueResult {
                pole: pole.clone(),
                order: spec.pole_order(pole),
                value,
                points: m,
                convergence: change,
            });
        }
    }
}

/// Residues at every pole in the period strip, in increasing order.
pub fn all_residues(spec: &KernelSpec, digits: u32) -> Result<Vec<ResidueResult>, NumericError> {
    let radius = BigRational::new(1.into(), 4.into());
    spec.poles()
        .iter()
        .map(|a| residue_2pii(spec, a, &radius, 16, digits))
        .collect()
}

/// Sum of [`all_residues`].
pub fn residue_sum(spec: &KernelSpec, digits: u32) -> Result<BigComplex, NumericError> {
    let prec = bits_for_digits(digits);
    Ok(all_residues(spec, digits)?
        .iter()
        .fold(BigComplex::zero(prec), |acc, r| &acc + &r.value))
}

/// Whether a result is real and within `tol` of `target`.
pub fn matches_real(value: &BigComplex, target: &BigRational, tol: &BigFloat) -> bool {
    let prec = value.prec();
    let t = if target.is_zero() {
        BigFloat::zero(prec)
    } else {
        BigFloat::from_rational(target, prec)
    };
    (&value.re - &t).abs() <= *tol && value.im.abs() <= *tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::KernelId;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn double_and_triple_poles() {
        let spec = KernelSpec::new(KernelId::HH2, 4).unwrap();
        let tol = BigFloat::ten_pow_neg(30, 200);
        let r0 = residue_2pii(&spec, &rat(0, 1), &rat(1, 4), 16, 40).unwrap();
        assert!(matches_real(&r0.value, &rat(-4, 1), &tol), "{}", r0.value);
        assert_eq!(r0.order, 3);
        assert!(r0.convergence <= BigFloat::ten_pow_neg(30, 200));
        let r2 = residue_2pii(&spec, &rat(2, 1), &rat(1, 4), 16, 40).unwrap();
        assert!(matches_real(&r2.value, &rat(2, 1), &tol), "{}", r2.value);
    }

    #[test]
    fn argument_checks() {
        let spec = KernelSpec::new(KernelId::HH2, 4).unwrap();
        let bad =
            |radius: BigRational, points| residue_2pii(&spec, &rat(0, 1), &radius, points, 40);
        assert!(matches!(
            bad(rat(1, 2), 16),
            Err(NumericError::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(rat(0, 1), 16),
            Err(NumericError::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(rat(1, 4), 24),
            Err(NumericError::InvalidArgument(_))
        ));
        assert!(matches!(
            bad(rat(1, 4), 8),
            Err(NumericError::InvalidArgument(_))
        ));
    }
}
