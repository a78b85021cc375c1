use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{CycloContext, CycloElem, ExactError};

/// Smallest field order holding `sin` and `cos` of `aπ/q`: `lcm(4, 2q)`.
pub fn trig_order(q: u64) -> u64 {
    4u64.lcm(&(2 * q))
}

/// `sin(aπ/q)` in its own field `Q(ζ_M)`, `M = lcm(4, 2q)`.
pub fn sin_pi_rational(a: i64, q: u64) -> Result<CycloElem, ExactError> {
    let ctx = CycloContext::new(trig_order(q))?;
    sin_pi_in(&ctx, &BigRational::new(a.into(), q.into()))
}

/// `cos(aπ/q)` in its own field `Q(ζ_M)`, `M = lcm(4, 2q)`.
pub fn cos_pi_rational(a: i64, q: u64) -> Result<CycloElem, ExactError> {
    let ctx = CycloContext::new(trig_order(q))?;
    cos_pi_in(&ctx, &BigRational::new(a.into(), q.into()))
}

/// Exponent `s` with `ζ_M^s = e^{iπ·angle}`; the field order must be a multiple of `2q`.
fn half_turn_exponent(ctx: &CycloContext, angle: &BigRational) -> Result<i64, ExactError> {
    let m = BigInt::from(ctx.order());
    let twice_den: BigInt = angle.denom() * 2;
    if !(&m % &twice_den).is_zero() {
        return Err(ExactError::AngleNotInField {
            angle: angle.to_string(),
            order: ctx.order(),
        });
    }
    let s = (angle.numer() * (&m / twice_den)).mod_floor(&m);
    Ok(s.to_i64().expect("exponent below the field order"))
}

/// `sin(π·angle) = (ζ^s − ζ^{−s}) / (2i)` inside the given field.
///
/// The field order must be divisible by 4 and by twice the angle's denominator.
pub fn sin_pi_in(ctx: &Arc<CycloContext>, angle: &BigRational) -> Result<CycloElem, ExactError> {
    let m = ctx.order() as i64;
    if m % 4 != 0 {
        return Err(ExactError::AngleNotInField {
            angle: angle.to_string(),
            order: ctx.order(),
        });
    }
    let s = half_turn_exponent(ctx, angle)?;
    // 1/i = ζ^{-M/4}
    let quarter = m / 4;
    let diff =
        &CycloElem::root_of_unity(ctx, s - quarter) - &CycloElem::root_of_unity(ctx, -s - quarter);
    Ok(diff.scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
}

/// `cos(π·angle) = (ζ^s + ζ^{−s}) / 2` inside the given field.
pub fn cos_pi_in(ctx: &Arc<CycloContext>, angle: &BigRational) -> Result<CycloElem, ExactError> {
    let s = half_turn_exponent(ctx, angle)?;
    let sum = &CycloElem::root_of_unity(ctx, s) + &CycloElem::root_of_unity(ctx, -s);
    Ok(sum.scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn special_values() {
        assert_eq!(
            sin_pi_rational(1, 2).unwrap().to_rational().unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            sin_pi_rational(1, 6).unwrap().to_rational().unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            cos_pi_rational(1, 3).unwrap().to_rational().unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            cos_pi_rational(1, 1).unwrap().to_rational().unwrap(),
            rat(-1, 1)
        );
        assert!(sin_pi_rational(7, 7).unwrap().is_zero());
        assert_eq!(
            sin_pi_rational(-1, 6).unwrap().to_rational().unwrap(),
            rat(-1, 2)
        );
    }

    #[test]
    fn sin_quarter_pi_squares_to_half() {
        let s = sin_pi_rational(1, 4).unwrap();
        assert!(s.to_rational().is_err());
        assert_eq!((&s * &s).to_rational().unwrap(), rat(1, 2));
    }

    #[test]
    fn pythagorean_identity_small_grid() {
        for q in 1..=12u64 {
            for a in 0..=2 * q as i64 {
                let s = sin_pi_rational(a, q).unwrap();
                let c = cos_pi_rational(a, q).unwrap();
                assert!((&(&s * &s) + &(&c * &c)).is_one(), "a={a} q={q}");
            }
        }
    }

    #[test]
    fn angle_must_fit_the_field() {
        let ctx = CycloContext::new(12).unwrap();
        assert!(sin_pi_in(&ctx, &rat(1, 6)).is_ok());
        assert!(matches!(
            sin_pi_in(&ctx, &rat(1, 5)),
            Err(ExactError::AngleNotInField { .. })
        ));
        let odd = CycloContext::new(6).unwrap();
        assert!(sin_pi_in(&odd, &rat(1, 3)).is_err());
        assert!(cos_pi_in(&odd, &rat(1, 3)).is_ok());
    }
}
