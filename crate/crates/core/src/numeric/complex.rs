use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::BigFloat;

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(BigFloat::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(BigFloat::one(prec))
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::new(BigFloat::zero(prec), BigFloat::one(prec))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let im = BigFloat::zero(re.prec());
        BigComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        BigComplex::new(&self.re * k, &self.im * k)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        BigComplex::new(-&self.im, self.re.clone())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        BigComplex::new(&m * &c, &m * &s)
    }

    /// `(sin z, cos z)`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.re.sin_cos();
        let (sh, ch) = self.im.sinh_cosh();
        let sin = BigComplex::new(&s * &ch, &c * &sh);
        let cos = BigComplex::new(&c * &ch, -(&s * &sh));
        (sin, cos)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::one(self.prec());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `a+bi` with `sig` significant digits per part.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.im.is_zero() {
            return self.re.to_decimal(sig);
        }
        if self.re.is_zero() {
            return format!("{}i", self.im.to_decimal(sig));
        }
        let im = self.im.abs().to_decimal(sig);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{}{sign}{im}i", self.re.to_decimal(sig))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or_else(|| self.re.display_digits());
        f.write_str(&self.to_decimal(sig))
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    /// Panics when `rhs` is zero.
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        BigComplex::new(&re / &d, &im / &d)
    }
}
