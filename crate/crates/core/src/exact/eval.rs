//! Exact evaluation of expressions in a single cyclotomic field.
//!
//! Angle arguments and summation bounds are evaluated first as polynomials in
//! π over Q; every `sin`/`cos` argument must come out as a rational multiple of
//! π. A first pass collects the denominators of those multiples to pick the
//! field `Q(ζ_M)`; the second pass evaluates in that field.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::trig::{cos_pi_in, sin_pi_in, trig_order};
use super::{CycloContext, CycloElem, ExactError};
use crate::expr::{render, Bindings, TrigExpr};

/// Upper limit on the number of terms in one summation.
pub const MAX_SUM_TERMS: u64 = 1_000_000;

/// Polynomial in π with rational coefficients; index = power of π.
#[derive(Debug, Clone, PartialEq)]
struct PiPoly(Vec<BigRational>);

impl PiPoly {
    fn constant(r: BigRational) -> Self {
        PiPoly(vec![r]).trimmed()
    }

    fn pi() -> Self {
        PiPoly(vec![BigRational::zero(), BigRational::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn as_rational(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    /// `c` such that the value is `c·π`.
    fn as_pi_multiple(&self) -> Option<BigRational> {
        match self.0.as_slice() {
            [] => Some(BigRational::zero()),
            [c0, c1] if c0.is_zero() => Some(c1.clone()),
            _ => None,
        }
    }

    fn add(&self, other: &Self, sign: i64) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        let out = (0..n)
            .map(|i| {
                let a = self.0.get(i).unwrap_or(&zero);
                let b = other.0.get(i).unwrap_or(&zero);
                if sign < 0 {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        PiPoly(out).trimmed()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return PiPoly(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiPoly(out).trimmed()
    }

    fn scale(&self, r: &BigRational) -> Self {
        PiPoly(self.0.iter().map(|c| c * r).collect()).trimmed()
    }
}

/// Numerator/denominator pair of field elements.
///
/// Sums of quotients are accumulated without inverting anything; only
/// [`Fraction::value`] runs the extended Euclidean inverse.
#[derive(Debug, Clone)]
pub struct Fraction {
    num: CycloElem,
    den: CycloElem,
}

impl Fraction {
    pub fn new(num: CycloElem, den: CycloElem) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.order() != den.order() {
            return Err(ExactError::MixedOrders {
                left: num.order(),
                right: den.order(),
            });
        }
        Ok(Fraction { num, den }.tidy())
    }

    pub fn from_elem(e: CycloElem) -> Self {
        let den = CycloElem::one(e.context());
        Fraction { num: e, den }
    }

    pub fn numerator(&self) -> &CycloElem {
        &self.num
    }

    pub fn denominator(&self) -> &CycloElem {
        &self.den
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        self.num.context()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The quotient as a single field element.
    pub fn value(&self) -> Result<CycloElem, ExactError> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        self.num.checked_div(&self.den)
    }

    /// Rational value if the quotient is rational, found without inverting:
    /// `num = c·den` for the rational `c`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        let i = self.den.first_nonzero()?;
        let c = self.num.coeff(i) / self.den.coeff(i);
        (self.den.scale(&c) == self.num).then_some(c)
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool, ExactError> {
        Ok(self.num.checked_mul(&other.den)? == other.num.checked_mul(&self.den)?)
    }

    fn tidy(mut self) -> Self {
        if self.num.is_zero() {
            self.den = CycloElem::one(self.num.context());
            return self;
        }
        let content = self.den.content();
        if !content.is_one() {
            let inv = content.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if self.den.is_one() {
            return self;
        }
        // Rational denominators are folded into the numerator.
        if self.den.is_rational() {
            let r = self.den.to_rational().expect("checked rational");
            self.num = self.num.scale(&r.recip());
            self.den = CycloElem::one(self.num.context());
        }
        self
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, ExactError> {
        let out = if self.den == other.den {
            let num = if negate {
                self.num.checked_sub(&other.num)?
            } else {
                self.num.checked_add(&other.num)?
            };
            Fraction {
                num,
                den: self.den.clone(),
            }
        } else {
            let a = self.num.checked_mul(&other.den)?;
            let b = other.num.checked_mul(&self.den)?;
            let num = if negate {
                a.checked_sub(&b)?
            } else {
                a.checked_add(&b)?
            };
            Fraction {
                num,
                den: self.den.checked_mul(&other.den)?,
            }
        };
        Ok(out.tidy())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let num = self.num.checked_mul(&other.num)?;
        let den = if other.den.is_one() {
            self.den.clone()
        } else if self.den.is_one() {
            other.den.clone()
        } else {
            self.den.checked_mul(&other.den)?
        };
        Ok(Fraction { num, den }.tidy())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let flipped = Fraction {
            num: other.den.clone(),
            den: other.num.clone(),
        };
        self.checked_mul(&flipped)
    }

    pub fn neg(&self) -> Self {
        Fraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 {
            if self.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Fraction {
                num: self.den.clone(),
                den: self.num.clone(),
            }
        } else {
            self.clone()
        };
        let k = e.unsigned_abs();
        let num = pow_elem(&base.num, k);
        let den = pow_elem(&base.den, k);
        Ok(Fraction { num, den }.tidy())
    }
}

fn pow_elem(x: &CycloElem, k: u64) -> CycloElem {
    x.pow(k as i64).expect("non-negative power")
}

/// Lexically scoped variable lookup: summation indices shadow outer bindings.
struct Env<'a> {
    base: &'a Bindings,
    locals: Vec<(&'a str, BigRational)>,
}

impl<'a> Env<'a> {
    fn new(base: &'a Bindings) -> Self {
        Env {
            base,
            locals: Vec::new(),
        }
    }

    fn lookup(&self, name: &str) -> Result<&BigRational, ExactError> {
        self.locals
            .iter()
            .rev()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v)
            .or_else(|| self.base.get(name))
            .ok_or_else(|| ExactError::UnboundVariable(name.to_string()))
    }
}

fn scalar<'a>(e: &'a TrigExpr, env: &mut Env<'a>) -> Result<PiPoly, ExactError> {
    Ok(match e {
        TrigExpr::Rational(r) => PiPoly::constant(r.clone()),
        TrigExpr::Pi => PiPoly::pi(),
        TrigExpr::Var(name) => PiPoly::constant(env.lookup(name)?.clone()),
        TrigExpr::Add(a, b) => scalar(a, env)?.add(&scalar(b, env)?, 1),
        TrigExpr::Sub(a, b) => scalar(a, env)?.add(&scalar(b, env)?, -1),
        TrigExpr::Mul(a, b) => scalar(a, env)?.mul(&scalar(b, env)?),
        TrigExpr::Div(a, b) => {
            let num = scalar(a, env)?;
            let den = scalar(b, env)?;
            match den.as_rational() {
                Some(d) if d.is_zero() => return Err(ExactError::DivisionByZero),
                Some(d) => num.scale(&d.recip()),
                None => return Err(ExactError::NonRationalAngle(render(e))),
            }
        }
        TrigExpr::Neg(a) => scalar(a, env)?.scale(&-BigRational::one()),
        TrigExpr::Pow(a, k) => {
            let base = scalar(a, env)?;
            let mut acc = PiPoly::constant(BigRational::one());
            let step = if *k < 0 {
                match base.as_rational() {
                    Some(d) if d.is_zero() => return Err(ExactError::DivisionByZero),
                    Some(d) => PiPoly::constant(d.recip()),
                    None => return Err(ExactError::NonRationalAngle(render(e))),
                }
            } else {
                base
            };
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&step);
            }
            acc
        }
        TrigExpr::Sin(_) | TrigExpr::Cos(_) => {
            return Err(ExactError::NonRationalAngle(render(e)));
        }
        TrigExpr::Sum {
            index,
            lower,
            upper,
            body,
        } => {
            let (lo, hi) = bounds(lower, upper, env)?;
            let mut acc = PiPoly(vec![]);
            for i in lo..=hi {
                env.locals
                    .push((index, BigRational::from_integer(i.into())));
                let term = scalar(body, env);
                env.locals.pop();
                acc = acc.add(&term?, 1);
            }
            acc
        }
    })
}

fn bounds<'a>(
    lower: &'a TrigExpr,
    upper: &'a TrigExpr,
    env: &mut Env<'a>,
) -> Result<(i64, i64), ExactError> {
    let as_int = |e: &'a TrigExpr, env: &mut Env<'a>| -> Result<i64, ExactError> {
        let v = scalar(e, env)?;
        v.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
            .ok_or_else(|| ExactError::NonIntegerBound(render(e)))
    };
    let lo = as_int(lower, env)?;
    let hi = as_int(upper, env)?;
    if hi >= lo && (hi - lo) as u64 >= MAX_SUM_TERMS {
        return Err(ExactError::SumTooLong((hi - lo) as u64 + 1));
    }
    Ok((lo, hi))
}

fn angle<'a>(arg: &'a TrigExpr, env: &mut Env<'a>) -> Result<BigRational, ExactError> {
    scalar(arg, env)?
        .as_pi_multiple()
        .ok_or_else(|| ExactError::NonRationalAngle(render(arg)))
}

fn collect_denominators<'a>(
    e: &'a TrigExpr,
    env: &mut Env<'a>,
    acc: &mut BigInt,
) -> Result<(), ExactError> {
    if !e.contains_trig() {
        return Ok(());
    }
    match e {
        TrigExpr::Sin(arg) | TrigExpr::Cos(arg) => {
            let a = angle(arg, env)?;
            *acc = acc.lcm(a.denom());
        }
        TrigExpr::Add(a, b) | TrigExpr::Sub(a, b) | TrigExpr::Mul(a, b) | TrigExpr::Div(a, b) => {
            collect_denominators(a, env, acc)?;
            collect_denominators(b, env, acc)?;
        }
        TrigExpr::Neg(a) | TrigExpr::Pow(a, _) => collect_denominators(a, env, acc)?,
        TrigExpr::Sum {
            index,
            lower,
            upper,
            body,
        } => {
            let (lo, hi) = bounds(lower, upper, env)?;
            for i in lo..=hi {
                env.locals
                    .push((index, BigRational::from_integer(i.into())));
                let r = collect_denominators(body, env, acc);
                env.locals.pop();
                r?;
            }
        }
        TrigExpr::Rational(_) | TrigExpr::Pi | TrigExpr::Var(_) => {}
    }
    Ok(())
}

/// Smallest field order in which every listed expression can be evaluated:
/// `lcm(4, 2L)` with `L` the lcm of all angle denominators.
pub fn required_order(exprs: &[&TrigExpr], bindings: &Bindings) -> Result<u64, ExactError> {
    let mut acc = BigInt::one();
    for e in exprs {
        collect_denominators(e, &mut Env::new(bindings), &mut acc)?;
    }
    let l = acc.to_u64().ok_or(ExactError::CapExceeded {
        order: u64::MAX,
        phi: usize::MAX,
        cap: super::DEFAULT_DEGREE_CAP,
    })?;
    Ok(trig_order(l))
}

fn field<'a>(
    e: &'a TrigExpr,
    ctx: &Arc<CycloContext>,
    env: &mut Env<'a>,
) -> Result<Fraction, ExactError> {
    if !e.contains_trig() {
        let v = scalar(e, env)?;
        let r = v
            .as_rational()
            .ok_or_else(|| ExactError::Transcendental(render(e)))?;
        return Ok(Fraction::from_elem(CycloElem::from_rational(ctx, &r)));
    }
    Ok(match e {
        TrigExpr::Sin(arg) => Fraction::from_elem(sin_pi_in(ctx, &angle(arg, env)?)?),
        TrigExpr::Cos(arg) => Fraction::from_elem(cos_pi_in(ctx, &angle(arg, env)?)?),
        TrigExpr::Add(a, b) => field(a, ctx, env)?.checked_add(&field(b, ctx, env)?)?,
        TrigExpr::Sub(a, b) => field(a, ctx, env)?.checked_sub(&field(b, ctx, env)?)?,
        TrigExpr::Mul(a, b) => field(a, ctx, env)?.checked_mul(&field(b, ctx, env)?)?,
        TrigExpr::Div(a, b) => field(a, ctx, env)?.checked_div(&field(b, ctx, env)?)?,
        TrigExpr::Neg(a) => field(a, ctx, env)?.neg(),
        TrigExpr::Pow(a, k) => field(a, ctx, env)?.pow(*k)?,
        TrigExpr::Sum {
            index,
            lower,
            upper,
            body,
        } => {
            let (lo, hi) = bounds(lower, upper, env)?;
            let mut acc = Fraction::from_elem(CycloElem::zero(ctx));
            for i in lo..=hi {
                env.locals
                    .push((index, BigRational::from_integer(i.into())));
                let term = field(body, ctx, env);
                env.locals.pop();
                acc = acc.checked_add(&term?)?;
            }
            acc
        }
        TrigExpr::Rational(_) | TrigExpr::Pi | TrigExpr::Var(_) => unreachable!("trig-free leaves"),
    })
}

/// Evaluates in a caller-chosen field, which must contain every angle used.
pub fn eval_exact_in(
    ctx: &Arc<CycloContext>,
    expr: &TrigExpr,
    bindings: &Bindings,
) -> Result<Fraction, ExactError> {
    field(expr, ctx, &mut Env::new(bindings))
}

/// Evaluates in the smallest suitable field, keeping the result as a fraction.
pub fn eval_exact_fraction(expr: &TrigExpr, bindings: &Bindings) -> Result<Fraction, ExactError> {
    let ctx = CycloContext::new(required_order(&[expr], bindings)?)?;
    eval_exact_in(&ctx, expr, bindings)
}

/// Exact value of `expr` as a single cyclotomic field element.
pub fn eval_exact(expr: &TrigExpr, bindings: &Bindings) -> Result<CycloElem, ExactError> {
    eval_exact_fraction(expr, bindings)?.value()
}
