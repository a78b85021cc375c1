use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::{bits_for_digits, check_digits, BigComplex, BigFloat, NumericError};
use crate::exact::{CycloElem, MAX_SUM_TERMS};
use crate::expr::{render, Bindings, TrigExpr};

/// Real-valued variable bindings for numeric evaluation.
pub type NumBindings = BTreeMap<String, BigFloat>;

/// Converts exact rational bindings at the precision used for `digits`.
pub fn numeric_bindings(bindings: &Bindings, digits: u32) -> NumBindings {
    let prec = bits_for_digits(digits);
    bindings
        .iter()
        .map(|(k, v)| (k.clone(), BigFloat::from_rational(v, prec)))
        .collect()
}

struct Env<'a> {
    base: &'a NumBindings,
    locals: Vec<(&'a str, BigFloat)>,
    prec: u32,
    tiny: BigFloat,
}

impl<'a> Env<'a> {
    fn lookup(&self, name: &str) -> Result<BigFloat, NumericError> {
        if let Some((_, v)) = self.locals.iter().rev().find(|(k, _)| *k == name) {
            return Ok(v.clone());
        }
        self.base
            .get(name)
            .map(|v| v.with_prec(self.prec))
            .ok_or_else(|| NumericError::UnboundVariable(name.to_string()))
    }

    fn nonzero(&self, d: &BigFloat) -> Result<(), NumericError> {
        if d.abs() < self.tiny {
            Err(NumericError::DivisionByZero)
        } else {
            Ok(())
        }
    }

    fn integer(&self, e: &TrigExpr, v: &BigFloat) -> Result<i64, NumericError> {
        let n = v.round();
        let gap = (v - &BigFloat::from_bigint(n.clone(), self.prec)).abs();
        if gap > BigFloat::one(self.prec).mul_pow2(-(self.prec as i64) / 2) {
            return Err(NumericError::NonIntegerBound(render(e)));
        }
        n.to_i64()
            .ok_or_else(|| NumericError::NonIntegerBound(render(e)))
    }
}

fn real<'a>(e: &'a TrigExpr, env: &mut Env<'a>) -> Result<BigFloat, NumericError> {
    let prec = env.prec;
    Ok(match e {
        TrigExpr::Rational(r) => BigFloat::from_rational(r, prec),
        TrigExpr::Pi => BigFloat::pi(prec),
        TrigExpr::Var(name) => env.lookup(name)?,
        TrigExpr::Add(a, b) => &real(a, env)? + &real(b, env)?,
        TrigExpr::Sub(a, b) => &real(a, env)? - &real(b, env)?,
        TrigExpr::Mul(a, b) => &real(a, env)? * &real(b, env)?,
        TrigExpr::Div(a, b) => {
            let n = real(a, env)?;
            let d = real(b, env)?;
            env.nonzero(&d)?;
            &n / &d
        }
        TrigExpr::Neg(a) => -real(a, env)?,
        TrigExpr::Pow(a, k) => {
            let base = real(a, env)?;
            let mut acc = BigFloat::one(prec);
            for _ in 0..k.unsigned_abs() {
                acc = &acc * &base;
            }
            if *k < 0 {
                env.nonzero(&acc)?;
                acc = &BigFloat::one(prec) / &acc;
            }
            acc
        }
        TrigExpr::Sin(a) => real(a, env)?.sin(),
        TrigExpr::Cos(a) => real(a, env)?.cos(),
        TrigExpr::Sum {
            index,
            lower,
            upper,
            body,
        } => {
            let lo_v = real(lower, env)?;
            let lo = env.integer(lower, &lo_v)?;
            let hi_v = real(upper, env)?;
            let hi = env.integer(upper, &hi_v)?;
            if hi >= lo && (hi - lo) as u64 >= MAX_SUM_TERMS {
                return Err(NumericError::SumTooLong((hi - lo) as u64 + 1));
            }
            let mut acc = BigFloat::zero(prec);
            for i in lo..=hi {
                env.locals.push((index, BigFloat::from_int(i, prec)));
                let term = real(body, env);
                env.locals.pop();
                acc = &acc + &term?;
            }
            acc
        }
    })
}

/// Multiprecision value of `expr`, accurate to roughly `10^-(digits-5)`.
///
/// Evaluation runs with 15 guard digits. A denominator smaller than
/// `10^-digits` in magnitude is reported as a division by zero.
pub fn eval_numeric(
    expr: &TrigExpr,
    bindings: &NumBindings,
    digits: u32,
) -> Result<BigComplex, NumericError> {
    check_digits(digits)?;
    let prec = bits_for_digits(digits);
    let mut env = Env {
        base: bindings,
        locals: Vec::new(),
        prec,
        tiny: BigFloat::ten_pow_neg(digits, prec),
    };
    Ok(BigComplex::from_real(real(expr, &mut env)?))
}

/// Complex value of a cyclotomic field element under `ζ_m ↦ e^{2πi/m}`.
pub fn cyclo_to_complex(x: &CycloElem, digits: u32) -> BigComplex {
    let prec = bits_for_digits(digits);
    let m = x.order() as i64;
    let angle = BigFloat::pi(prec).mul_pow2(1).div_int(m);
    let coeffs = x.coeffs();
    let mut acc = BigComplex::zero(prec);
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (s, co) = angle.mul_int(i as i64).sin_cos();
        let c = BigFloat::from_rational(c, prec);
        acc = &acc + &BigComplex::new(&c * &co, &c * &s);
    }
    acc
}
