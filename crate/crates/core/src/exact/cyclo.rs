use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly;
use super::ExactError;

/// Largest field degree `phi(m)` accepted by [`CycloContext::new`].
pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// The field `Q(ζ_m)` presented as `Q[x] / Φ_m(x)`.
#[derive(Debug)]
pub struct CycloContext {
    order: u64,
    phi: usize,
    minpoly: Vec<BigInt>,
    /// Nonzero coefficients of `Φ_m` below the leading term.
    tail: Vec<(usize, BigInt)>,
    /// Same as `tail` when every coefficient fits in an `i64`.
    tail_small: Option<Vec<(usize, i64)>>,
}

impl CycloContext {
    pub fn new(order: u64) -> Result<Arc<Self>, ExactError> {
        Self::with_cap(order, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(order: u64, cap: usize) -> Result<Arc<Self>, ExactError> {
        if order == 0 {
            return Err(ExactError::InvalidOrder);
        }
        let phi = poly::euler_phi(order) as usize;
        if phi > cap {
            return Err(ExactError::CapExceeded { order, phi, cap });
        }
        let minpoly = poly::cyclotomic_polynomial(order);
        debug_assert_eq!(minpoly.len(), phi + 1);
        let tail: Vec<(usize, BigInt)> = minpoly[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let tail_small = tail
            .iter()
            .map(|(i, c)| c.to_i64().map(|c| (*i, c)))
            .collect();
        Ok(Arc::new(CycloContext {
            order,
            phi,
            minpoly,
            tail,
            tail_small,
        }))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Φ_m`, constant term first.
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Reduces an integer coefficient vector of any length modulo `Φ_m`.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if v.len() <= phi {
            v.resize(phi, BigInt::zero());
            return v;
        }
        // x^m ≡ 1 first, which keeps the cascade below short.
        let m = self.order as usize;
        if v.len() > m {
            for e in (m..v.len()).rev() {
                let c = std::mem::take(&mut v[e]);
                if !c.is_zero() {
                    v[e % m] += c;
                }
            }
            v.truncate(m);
        }
        if let Some(small) = self.try_reduce_small(&v) {
            return small;
        }
        for top in (phi..v.len()).rev() {
            let c = std::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            for (i, t) in &self.tail {
                v[top - phi + i] -= &c * t;
            }
        }
        v.truncate(phi);
        v
    }

    fn try_reduce_small(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let tail = self.tail_small.as_ref()?;
        let mut w: Vec<i128> = v
            .iter()
            .map(|c| c.to_i64().map(i128::from))
            .collect::<Option<_>>()?;
        let phi = self.phi;
        for top in (phi..w.len()).rev() {
            let c = w[top];
            if c == 0 {
                continue;
            }
            w[top] = 0;
            for &(i, t) in tail {
                let slot = &mut w[top - phi + i];
                *slot = slot.checked_sub(c.checked_mul(i128::from(t))?)?;
            }
        }
        w.truncate(phi);
        Some(w.into_iter().map(BigInt::from).collect())
    }
}

/// Returns the context for `Q(ζ_m)` with the default degree cap.
pub fn cyclo_context(order: u64) -> Result<Arc<CycloContext>, ExactError> {
    CycloContext::new(order)
}

/// An exact element of `Q(ζ_m)`.
///
/// Stored as an integer coefficient vector over a positive common denominator,
/// reduced modulo `Φ_m` and with the overall content removed, so two elements
/// of the same field are equal exactly when their representations are.
#[derive(Clone)]
pub struct CycloElem {
    ctx: Arc<CycloContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring operation on two elements of the same field.
pub fn arith(op: ArithOp, x: &CycloElem, y: &CycloElem) -> Result<CycloElem, ExactError> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
    }
}

impl CycloElem {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CycloElem {
            ctx: ctx.clone(),
            num: vec![BigInt::zero(); ctx.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::from_integer(ctx, 1)
    }

    pub fn from_integer(ctx: &Arc<CycloContext>, n: i64) -> Self {
        Self::from_rational(ctx, &BigRational::from_integer(n.into()))
    }

    pub fn from_rational(ctx: &Arc<CycloContext>, r: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.phi];
        num[0] = r.numer().clone();
        CycloElem {
            ctx: ctx.clone(),
            num,
            den: r.denom().clone(),
        }
    }

    /// Builds an element from rational coefficients of `ζ^0, ζ^1, …` (any length).
    pub fn from_coeffs(ctx: &Arc<CycloContext>, coeffs: &[BigRational]) -> Self {
        let (num, den) = poly::clear_denominators(coeffs);
        Self::from_parts(ctx, num, den)
    }

    fn from_parts(ctx: &Arc<CycloContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        let num = ctx.reduce(num);
        let mut out = CycloElem {
            ctx: ctx.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }

    /// `ζ_m^a`, with the exponent taken modulo `m`.
    pub fn root_of_unity(ctx: &Arc<CycloContext>, a: i64) -> Self {
        let e = a.rem_euclid(ctx.order as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        CycloElem {
            ctx: ctx.clone(),
            num: ctx.reduce(v),
            den: BigInt::one(),
        }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn order(&self) -> u64 {
        self.ctx.order
    }

    /// Coefficients of `ζ^0 … ζ^{phi-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when every coefficient of `ζ^i`, `i ≥ 1`, vanishes.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<BigRational, ExactError> {
        if self.is_rational() {
            Ok(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            Err(ExactError::NotRational)
        }
    }

    /// Bit length of the largest numerator coefficient plus that of the denominator.
    pub fn height_bits(&self) -> u64 {
        poly::abs_max_bits(&self.num) + self.den.bits()
    }

    /// Coefficient of `ζ^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        match self.num.get(i) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.num.iter().position(|c| !c.is_zero())
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let g = self.num.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return BigRational::one();
        }
        BigRational::new(g, self.den.clone())
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.ctx.order == other.ctx.order {
            Ok(())
        } else {
            Err(ExactError::MixedOrders {
                left: self.ctx.order,
                right: other.ctx.order,
            })
        }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> CycloElem {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &other.den, b * &self.den);
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        let mut out = CycloElem {
            ctx: self.ctx.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(self.add_signed(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(self.add_signed(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycloElem::zero(&self.ctx));
        }
        let product = convolve_small(&self.num, &other.num)
            .unwrap_or_else(|| poly::mul_int(&self.num, &other.num));
        Ok(Self::from_parts(&self.ctx, product, &self.den * &other.den))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        let mut out = CycloElem {
            ctx: self.ctx.clone(),
            num,
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// `(element polynomial, Φ_m)` over the rationals.
    pub fn invert(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_rational() {
            let r = BigRational::new(self.den.clone(), self.num[0].clone());
            return Ok(Self::from_rational(&self.ctx, &r));
        }
        let inv = poly::inverse_mod(&self.num, &self.ctx.minpoly)
            .expect("nonzero element of a field is invertible");
        // (num/den)^{-1} = den · num^{-1}
        Ok(Self::from_coeffs(&self.ctx, &inv).scale(&BigRational::from_integer(self.den.clone())))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        self.checked_mul(&other.invert()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloElem::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Embeds into `Q(ζ_M)` for a multiple `M` of this element's order via `ζ_m = ζ_M^{M/m}`.
    pub fn lift(&self, target: &Arc<CycloContext>) -> Result<Self, ExactError> {
        let (m, big) = (self.ctx.order, target.order);
        if big % m != 0 {
            return Err(ExactError::MixedOrders {
                left: m,
                right: big,
            });
        }
        if m == big {
            return Ok(self.clone());
        }
        let step = (big / m) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(Self::from_parts(target, v, self.den.clone()))
    }

    /// Image under the automorphism `ζ ↦ ζ^k`, `gcd(k, m) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.ctx.order as i64;
        debug_assert_eq!(k.gcd(&m), 1);
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[(i as i64 * k).rem_euclid(m) as usize] += c;
            }
        }
        Self::from_parts(&self.ctx, v, self.den.clone())
    }
}

/// Schoolbook product in `i128`, or `None` if anything overflows.
fn convolve_small(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let to_small =
        |v: &[BigInt]| -> Option<Vec<i64>> { v.iter().map(ToPrimitive::to_i64).collect() };
    let (a, b) = (to_small(a)?, to_small(b)?);
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                let slot = &mut out[i + j];
                *slot = slot.checked_add(i128::from(x) * i128::from(y))?;
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem(m={}, {})", self.ctx.order, self)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

// Operator sugar for elements known to share a field. Mixing orders panics;
// use the `checked_*` methods when that is not guaranteed.

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.checked_add(rhs)
            .expect("operands share a cyclotomic field")
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        self.checked_sub(rhs)
            .expect("operands share a cyclotomic field")
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.checked_mul(rhs)
            .expect("operands share a cyclotomic field")
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}
