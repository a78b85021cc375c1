use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Extra bits carried through fixed-point kernels.
const GUARD: u32 = 32;

/// Binary floating-point value `mant · 2^exp` rounded to `prec` mantissa bits.
///
/// Binary operations keep the larger of the two precisions.
#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shr(v: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return v.clone();
    }
    let half = BigInt::one() << (k - 1);
    if v.is_negative() {
        -((-v + half) >> k)
    } else {
        (v + half) >> k
    }
}

fn shift(v: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        v << (by as u64)
    } else {
        round_shr(v, by.unsigned_abs())
    }
}

/// Nearest-integer quotient; `b` must be positive.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r << 1u32) >= *b {
        q + 1
    } else {
        q
    }
}

fn atan_inv(k: u32, w: u32, alternate: bool) -> BigInt {
    let k2 = BigInt::from(k) * k;
    let mut x = (BigInt::one() << w) / k;
    let mut sum = x.clone();
    let mut i = 1u64;
    loop {
        x /= &k2;
        let term = &x / (2 * i + 1);
        if term.is_zero() {
            break;
        }
        if alternate && i % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        i += 1;
    }
    sum
}

fn compute_pi(w: u32) -> BigInt {
    let ww = w + 16;
    let v = atan_inv(5, ww, true) * 16 - atan_inv(239, ww, true) * 4;
    round_shr(&v, 16)
}

fn compute_ln2(w: u32) -> BigInt {
    let ww = w + 16;
    round_shr(&(atan_inv(3, ww, false) * 2), 16)
}

static PI_CACHE: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);
static LN2_CACHE: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);

fn cached(cell: &Mutex<Option<(u32, BigInt)>>, w: u32, compute: fn(u32) -> BigInt) -> BigInt {
    let mut slot = cell.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((cw, v)) = slot.as_ref() {
        if *cw >= w {
            return round_shr(v, (cw - w) as u64);
        }
    }
    let cw = w.max(512) + 64;
    let v = compute(cw);
    let out = round_shr(&v, (cw - w) as u64);
    *slot = Some((cw, v));
    out
}

/// `round(π · 2^w)`.
pub(crate) fn pi_fixed(w: u32) -> BigInt {
    cached(&PI_CACHE, w, compute_pi)
}

fn ln2_fixed(w: u32) -> BigInt {
    cached(&LN2_CACHE, w, compute_ln2)
}

/// Taylor series of sin and cos at a fixed-point argument with `|r| ≤ 1`.
fn sin_cos_fixed(r: &BigInt, w: u32) -> (BigInt, BigInt) {
    let r2 = (r * r) >> w;
    let mut s = r.clone();
    let mut term = r.clone();
    let mut i = 1u64;
    loop {
        term = -((&term * &r2) >> w) / ((2 * i) * (2 * i + 1));
        if term.is_zero() {
            break;
        }
        s += &term;
        i += 1;
    }
    let one = BigInt::one() << w;
    let mut c = one.clone();
    let mut term = one;
    let mut i = 1u64;
    loop {
        term = -((&term * &r2) >> w) / ((2 * i - 1) * (2 * i));
        if term.is_zero() {
            break;
        }
        c += &term;
        i += 1;
    }
    (s, c)
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        BigFloat {
            mant: n,
            exp: 0,
            prec,
        }
        .normalized()
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let sh = (prec as i64 + 2 + r.denom().bits() as i64 - r.numer().bits() as i64).max(0);
        let q = round_div(&(r.numer() << (sh as u64)), r.denom());
        BigFloat {
            mant: q,
            exp: -sh,
            prec,
        }
        .normalized()
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(prec);
        }
        let (m, e, s) = x.integer_decode();
        BigFloat {
            mant: BigInt::from(m) * s,
            exp: e as i64,
            prec,
        }
        .normalized()
    }

    /// `π` rounded to `prec` bits.
    pub fn pi(prec: u32) -> Self {
        let w = prec + GUARD;
        BigFloat {
            mant: pi_fixed(w),
            exp: -(w as i64),
            prec,
        }
        .normalized()
    }

    pub fn ln2(prec: u32) -> Self {
        let w = prec + GUARD;
        BigFloat {
            mant: ln2_fixed(w),
            exp: -(w as i64),
            prec,
        }
        .normalized()
    }

    /// `10^-d` at the given precision.
    pub fn ten_pow_neg(d: u32, prec: u32) -> Self {
        let den = num_traits::pow(BigInt::from(10), d as usize);
        Self::from_rational(&BigRational::new(BigInt::one(), den), prec)
    }

    fn from_fixed(v: BigInt, w: u32, prec: u32) -> Self {
        BigFloat {
            mant: v,
            exp: -(w as i64),
            prec,
        }
        .normalized()
    }

    /// `round(self · 2^w)`.
    fn to_fixed(&self, w: u32) -> BigInt {
        shift(&self.mant, self.exp + w as i64)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let drop = bits - self.prec as u64;
            self.mant = round_shr(&self.mant, drop);
            self.exp += drop as i64;
        }
        self
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value rounded (or padded) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp,
            prec,
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// `e` with `2^(e-1) ≤ |self| < 2^e`; `None` for zero.
    pub fn magnitude(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.mant.bits() as i64 + self.exp)
    }

    /// Exact product with `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        BigFloat {
            mant: &self.mant * k,
            exp: self.exp,
            prec: self.prec,
        }
        .normalized()
    }

    pub fn div_int(&self, k: i64) -> Self {
        self / &BigFloat::from_int(k, self.prec)
    }

    fn sum(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec.max(other.prec);
        let b_mant = if negate {
            -&other.mant
        } else {
            other.mant.clone()
        };
        if other.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return BigFloat {
                mant: b_mant,
                exp: other.exp,
                prec,
            }
            .normalized();
        }
        let top_a = self.mant.bits() as i64 + self.exp;
        let top_b = other.mant.bits() as i64 + other.exp;
        // A term entirely below the last kept bit only affects rounding.
        if top_b < top_a - prec as i64 - 4 {
            return self.with_prec(prec);
        }
        if top_a < top_b - prec as i64 - 4 {
            return BigFloat {
                mant: b_mant,
                exp: other.exp,
                prec,
            }
            .normalized();
        }
        let e = self.exp.min(other.exp);
        let mant = (&self.mant << ((self.exp - e) as u64)) + (b_mant << ((other.exp - e) as u64));
        BigFloat { mant, exp: e, prec }.normalized()
    }

    fn product(&self, other: &Self) -> Self {
        BigFloat {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec: self.prec.max(other.prec),
        }
        .normalized()
    }

    fn quotient(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let sh = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << (sh as u64);
        let q = if other.mant.is_negative() {
            -round_div(&num, &-&other.mant)
        } else {
            round_div(&num, &other.mant)
        };
        BigFloat {
            mant: q,
            exp: self.exp - sh - other.exp,
            prec,
        }
        .normalized()
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let mut sh = (2 * self.prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - sh).rem_euclid(2) != 0 {
            sh += 1;
        }
        let m = &self.mant << (sh as u64);
        BigFloat {
            mant: m.sqrt(),
            exp: (self.exp - sh) / 2,
            prec: self.prec,
        }
        .normalized()
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return Self::one(prec);
        }
        let int_bits = self.magnitude().unwrap_or(0).max(0) as u32;
        let halvings = 8u32;
        let w = prec + GUARD + int_bits + halvings;
        let ln2 = ln2_fixed(w);
        let x = self.to_fixed(w);
        let k = round_div(&x, &ln2);
        let r = x - &k * &ln2;
        let rs = round_shr(&r, halvings as u64);
        let one = BigInt::one() << w;
        let mut sum = one.clone();
        let mut term = one;
        let mut i = 1u64;
        loop {
            term = ((&term * &rs) >> w) / i;
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        for _ in 0..halvings {
            sum = (&sum * &sum) >> w;
        }
        let k = k.to_i64().expect("exponent out of range");
        BigFloat {
            mant: sum,
            exp: k - w as i64,
            prec,
        }
        .normalized()
    }

    /// `(sin x, cos x)`, each with relative accuracy near the working precision
    /// unless the argument is within about `2^-2prec` of a multiple of π/2.
    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        if self.is_zero() {
            return (Self::zero(prec), Self::one(prec));
        }
        let mag = self.magnitude().unwrap_or(0);
        let int_bits = mag.max(0) as u32;
        let mut extra = (-mag).max(0) as u32;
        let need = prec as i64 + 16;
        loop {
            let w = prec + GUARD + int_bits + extra + 8;
            let half_pi = pi_fixed(w - 1);
            let x = self.to_fixed(w);
            let k = round_div(&x, &half_pi);
            let r = &x - &k * &half_pi;
            let err_bits = if k.is_zero() { 1 } else { int_bits as i64 + 2 };
            let accurate = r.bits() as i64 - err_bits;
            if accurate < need && extra < 2 * prec {
                extra = (extra + (need - accurate) as u32 + 8).min(2 * prec);
                continue;
            }
            let (s, c) = sin_cos_fixed(&r, w);
            let (s, c) = match k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0) {
                0 => (s, c),
                1 => (c, -s),
                2 => (-s, -c),
                _ => (-c, s),
            };
            return (Self::from_fixed(s, w, prec), Self::from_fixed(c, w, prec));
        }
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    /// `(sinh x, cosh x)`.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let prec = self.prec;
        if self.is_zero() {
            return (Self::zero(prec), Self::one(prec));
        }
        let extra = (-self.magnitude().unwrap_or(0)).max(0) as u32 + 8;
        let x = self.with_prec(prec + extra);
        let e = x.exp();
        let inv = &Self::one(prec + extra) / &e;
        let sinh = (&e - &inv).mul_pow2(-1);
        let cosh = (&e + &inv).mul_pow2(-1);
        (sinh.with_prec(prec), cosh.with_prec(prec))
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        shift(&self.mant, self.exp)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << self.exp.unsigned_abs())
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = round_shr(&self.mant, drop as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + drop;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling so intermediate powers stay finite.
        let half = (e / 2) as i32;
        m * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    /// Decimal text with `sig` significant digits, trailing zeros removed.
    ///
    /// Positional notation for decimal exponents in `[-6, 21)`, scientific
    /// otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let top = self.mant.bits() as i64 + self.exp;
        let mut e10 = ((top - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let digits = loop {
            let t = sig as i64 - 1 - e10;
            let ten = |k: i64| num_traits::pow(BigInt::from(10), k as usize);
            let mut num = self.mant.abs();
            let mut den = BigInt::one();
            if t >= 0 {
                num *= ten(t);
            } else {
                den *= ten(-t);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= self.exp.unsigned_abs();
            }
            let n = round_div(&num, &den).to_string();
            match n.len().cmp(&sig) {
                Ordering::Greater => e10 += 1,
                Ordering::Less => e10 -= 1,
                Ordering::Equal => break n,
            }
        };
        let sign = if self.is_negative() { "-" } else { "" };
        let body = if (-6..21).contains(&e10) {
            if e10 >= 0 {
                let split = (e10 + 1) as usize;
                if split >= digits.len() {
                    format!("{digits}{}", "0".repeat(split - digits.len()))
                } else {
                    let frac = digits[split..].trim_end_matches('0');
                    if frac.is_empty() {
                        digits[..split].to_string()
                    } else {
                        format!("{}.{frac}", &digits[..split])
                    }
                }
            } else {
                let zeros = "0".repeat((-e10 - 1) as usize);
                format!("0.{zeros}{}", digits.trim_end_matches('0'))
            }
        } else {
            let frac = digits[1..].trim_end_matches('0');
            if frac.is_empty() {
                format!("{}e{e10}", &digits[..1])
            } else {
                format!("{}.{frac}e{e10}", &digits[..1])
            }
        };
        format!("{sign}{body}")
    }

    /// Decimal digits this precision carries, less a safety margin.
    pub fn display_digits(&self) -> usize {
        ((self.prec as f64 * std::f64::consts::LOG10_2) as usize)
            .saturating_sub(3)
            .max(1)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &other.mant << ((other.exp - e) as u64);
        Some(a.cmp(&b))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.display_digits());
        f.write_str(&self.to_decimal(sig))
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

macro_rules! float_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                $body(self, rhs)
            }
        }
        impl $trait<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                $body(&self, &rhs)
            }
        }
    };
}

float_binop!(Add, add, |a: &BigFloat, b: &BigFloat| a.sum(b, false));
float_binop!(Sub, sub, |a: &BigFloat, b: &BigFloat| a.sum(b, true));
float_binop!(Mul, mul, |a: &BigFloat, b: &BigFloat| a.product(b));
float_binop!(Div, div, |a: &BigFloat, b: &BigFloat| a.quotient(b));
