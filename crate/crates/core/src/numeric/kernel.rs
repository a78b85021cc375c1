use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{BigComplex, BigFloat, NumericError};

/// The three contour-integration integrands
/// `sin(3πz/n) / (sin(πz/n) sin²(2πz/n) (e^{2πiz} ∓ 1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelId {
    /// `e^{2πiz} - 1`, even `n`.
    HH2,
    /// `e^{2πiz} + 1`, even `n`.
    HH7,
    /// `e^{2πiz} + 1`, odd `n`.
    HH12,
}

impl KernelId {
    pub const ALL: [KernelId; 3] = [KernelId::HH2, KernelId::HH7, KernelId::HH12];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::HH2 => "hh2",
            KernelId::HH7 => "hh7",
            KernelId::HH12 => "hh12",
        }
    }

    fn needs_even_n(self) -> bool {
        !matches!(self, KernelId::HH12)
    }

    fn minus_one(self) -> bool {
        matches!(self, KernelId::HH2)
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelId {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hh2" => Ok(KernelId::HH2),
            "hh7" => Ok(KernelId::HH7),
            "hh12" => Ok(KernelId::HH12),
            _ => Err(NumericError::InvalidKernel(format!("unknown kernel '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSpec {
    pub kernel: KernelId,
    pub n: u64,
    /// Always 2 for the shipped kernels.
    pub j: u64,
}

fn is_integer(r: &BigRational) -> bool {
    r.is_integer()
}

impl KernelSpec {
    pub fn new(kernel: KernelId, n: u64) -> Result<Self, NumericError> {
        if n == 0 {
            return Err(NumericError::InvalidKernel("n must be positive".into()));
        }
        if kernel.needs_even_n() != (n % 2 == 0) {
            let parity = if kernel.needs_even_n() { "even" } else { "odd" };
            return Err(NumericError::InvalidKernel(format!(
                "{kernel} needs {parity} n, got {n}"
            )));
        }
        Ok(KernelSpec { kernel, n, j: 2 })
    }

    /// Pole order at `a`, counting simple zeros of each factor; 0 if regular.
    pub fn pole_order(&self, a: &BigRational) -> u32 {
        let n = BigRational::from_integer(BigInt::from(self.n));
        let over_n = a / &n;
        let mut den = 0u32;
        if is_integer(&over_n) {
            den += 1;
        }
        if is_integer(&(&over_n * BigInt::from(2))) {
            den += 2;
        }
        let exp_zero = if self.kernel.minus_one() {
            is_integer(a)
        } else {
            is_integer(&(a - BigRational::new(BigInt::one(), BigInt::from(2))))
        };
        if exp_zero {
            den += 1;
        }
        let num = u32::from(is_integer(&(&over_n * BigInt::from(3))));
        den.saturating_sub(num)
    }

    /// Poles in the period strip `-1/4 ≤ Re z < n - 1/4`, in increasing order.
    pub fn poles(&self) -> Vec<BigRational> {
        (0..2 * self.n as i64)
            .map(|m| BigRational::new(BigInt::from(m), BigInt::from(2)))
            .filter(|a| self.pole_order(a) > 0)
            .collect()
    }

    /// `f(z)`; a denominator below `tiny` in modulus means `z` sits on a pole.
    pub fn eval(&self, z: &BigComplex, tiny: &BigFloat) -> Result<BigComplex, NumericError> {
        let prec = z.prec();
        let pi = BigFloat::pi(prec);
        let t = z.scale(&pi.div_int(self.n as i64));
        let (s1, c1) = t.sin_cos();
        // sin 2t and sin 3t from sin t, cos t.
        let s2 = (&s1 * &c1).scale(&BigFloat::from_int(2, prec));
        let s1_cubed = s1.powi(3);
        let s3 =
            &s1.scale(&BigFloat::from_int(3, prec)) - &s1_cubed.scale(&BigFloat::from_int(4, prec));
        let e = z.scale(&pi.mul_pow2(1)).mul_i().exp();
        let shifted = if self.kernel.minus_one() {
            &e - &BigComplex::one(prec)
        } else {
            &e + &BigComplex::one(prec)
        };
        let den = &(&(&s1 * &s2) * &s2) * &shifted;
        if den.norm_sqr() < tiny * tiny {
            return Err(NumericError::PoleOnGrid);
        }
        Ok(&s3 / &den)
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, j={})", self.kernel, self.n, self.j)
    }
}
