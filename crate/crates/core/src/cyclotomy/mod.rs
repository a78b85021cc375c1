//! Quadratic residues, the quadratic Gauss sum and the period polynomials
//! `Y(x)`, `Z(x)` with `∏_{r QR}(x − ζ_p^r) = ½(Y(x) − √p·Z(x))`, plus an
//! exact certificate for the unit `(3 + √13)/2` written as a sine quotient.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{cyclo_context, sin_pi_in, CycloContext, CycloElem, ExactError};
use crate::numeric::cyclo_to_complex;

/// Largest prime accepted by [`period_polynomials`].
pub const MAX_PERIOD_PRIME: u64 = 101;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclotomyError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 1 mod 4")]
    WrongResidueClass(u64),
    #[error("p = {0} exceeds the limit of {MAX_PERIOD_PRIME}")]
    TooLarge(u64),
    #[error("coefficient {index} of {poly} is not an integer: {value}")]
    NonIntegerCoefficient {
        poly: &'static str,
        index: usize,
        value: String,
    },
    #[error("invariant failed: {0}")]
    InvariantViolated(String),
    #[error("certificate failed: {0}")]
    CertificateFailure(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

type Result<T> = std::result::Result<T, CyclotomyError>;

fn is_odd_prime(p: u64) -> bool {
    p >= 3
        && p % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= p)
            .all(|d| p % d != 0)
}

/// `{a² mod p : 1 ≤ a ≤ p − 1}`.
pub fn quadratic_residues(p: u64) -> Result<BTreeSet<u64>> {
    if !is_odd_prime(p) {
        return Err(CyclotomyError::NotPrime(p));
    }
    Ok((1..p).map(|a| a * a % p).collect())
}

fn check_period_prime(p: u64) -> Result<BTreeSet<u64>> {
    let qr = quadratic_residues(p)?;
    if p % 4 != 1 {
        return Err(CyclotomyError::WrongResidueClass(p));
    }
    Ok(qr)
}

/// `Σ χ(a) ζ_p^a` inside `ctx`, whose order must be a multiple of `p`.
fn gauss_sum_in(ctx: &Arc<CycloContext>, p: u64, qr: &BTreeSet<u64>) -> CycloElem {
    let step = (ctx.order() / p) as i64;
    let mut g = CycloElem::zero(ctx);
    for a in 1..p {
        let z = CycloElem::root_of_unity(ctx, a as i64 * step);
        g = if qr.contains(&a) { &g + &z } else { &g - &z };
    }
    g
}

/// The positive square root of `p` in `Q(ζ_p)`, as a quadratic Gauss sum.
pub fn gauss_sum_sqrt(p: u64) -> Result<CycloElem> {
    let qr = check_period_prime(p)?;
    let ctx = cyclo_context(p)?;
    let mut g = gauss_sum_in(&ctx, p, &qr);
    if cyclo_to_complex(&g, 30).re.is_negative() {
        g = -&g;
    }
    let square = &g * &g;
    if square != CycloElem::from_integer(&ctx, p as i64) {
        return Err(CyclotomyError::InvariantViolated(format!(
            "g^2 = {square}, expected {p}"
        )));
    }
    Ok(g)
}

/// Integer polynomials with `∏_{r QR}(x − ζ_p^r) = ½(Y − √p·Z)` and
/// `∏_{n QNR}(x − ζ_p^n) = ½(Y + √p·Z)`. Coefficients are listed from the
/// constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodPolyPair {
    pub p: u64,
    pub y: Vec<BigInt>,
    pub z: Vec<BigInt>,
}

fn eval_int(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mul_int_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl PeriodPolyPair {
    pub fn y_at(&self, x: i64) -> BigInt {
        eval_int(&self.y, &BigInt::from(x))
    }

    pub fn z_at(&self, x: i64) -> BigInt {
        eval_int(&self.z, &BigInt::from(x))
    }

    /// `¼(Y² − p·Z²)`, which should be `1 + x + … + x^{p−1}`.
    pub fn norm_polynomial(&self) -> Vec<BigRational> {
        let y2 = mul_int_poly(&self.y, &self.y);
        let z2 = mul_int_poly(&self.z, &self.z);
        let p = BigInt::from(self.p);
        let mut out: Vec<BigRational> = y2.into_iter().map(BigRational::from_integer).collect();
        for (i, c) in z2.into_iter().enumerate() {
            out[i] -= BigRational::from_integer(c * &p);
        }
        let quarter = BigRational::new(1.into(), 4.into());
        out.iter().map(|c| c * &quarter).collect()
    }
}

/// `∏ (x − ζ^e)` over the exponents, as coefficients in `Q(ζ_p)`.
fn root_product(ctx: &Arc<CycloContext>, exps: impl Iterator<Item = u64>) -> Vec<CycloElem> {
    let mut poly = vec![CycloElem::one(ctx)];
    for e in exps {
        let root = CycloElem::root_of_unity(ctx, e as i64);
        let mut next = vec![CycloElem::zero(ctx); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(&root * c);
        }
        poly = next;
    }
    poly
}

fn integer_coeffs(poly: &[CycloElem], name: &'static str) -> Result<Vec<BigInt>> {
    poly.iter()
        .enumerate()
        .map(|(index, c)| match c.to_rational() {
            Ok(r) if r.is_integer() => Ok(r.to_integer()),
            _ => Err(CyclotomyError::NonIntegerCoefficient {
                poly: name,
                index,
                value: c.to_string(),
            }),
        })
        .collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Expands the residue and non-residue root products exactly and splits
/// them into `Y` and `Z`.
pub fn period_polynomials(p: u64) -> Result<PeriodPolyPair> {
    let qr = check_period_prime(p)?;
    if p > MAX_PERIOD_PRIME {
        return Err(CyclotomyError::TooLarge(p));
    }
    let ctx = cyclo_context(p)?;
    let g = gauss_sum_sqrt(p)?;
    let g_inv = g.invert()?;
    let a = root_product(&ctx, qr.iter().copied());
    let b = root_product(&ctx, (1..p).filter(|x| !qr.contains(x)));
    let y: Vec<CycloElem> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let z: Vec<CycloElem> = a.iter().zip(&b).map(|(x, y)| &(y - x) * &g_inv).collect();
    let pair = PeriodPolyPair {
        p,
        y: trim(integer_coeffs(&y, "Y")?),
        z: trim(integer_coeffs(&z, "Z")?),
    };

    let half = BigRational::new(1.into(), 2.into());
    for (i, (ai, bi)) in a.iter().zip(&b).enumerate() {
        let yi = CycloElem::from_rational(
            &ctx,
            &BigRational::from_integer(pair.y.get(i).cloned().unwrap_or_default()),
        );
        let zi = CycloElem::from_rational(
            &ctx,
            &BigRational::from_integer(pair.z.get(i).cloned().unwrap_or_default()),
        );
        let gz = &g * &zi;
        if *ai != (&yi - &gz).scale(&half) || *bi != (&yi + &gz).scale(&half) {
            return Err(CyclotomyError::InvariantViolated(format!(
                "root products at x^{i}"
            )));
        }
    }
    let norm = pair.norm_polynomial();
    if norm.len() != p as usize || !norm.iter().all(|c| c.is_one()) {
        return Err(CyclotomyError::InvariantViolated(
            "(Y^2 - pZ^2)/4 != 1 + x + ... + x^(p-1)".into(),
        ));
    }
    Ok(pair)
}

/// Exact evidence that the sine quotient
/// `P = sin(6π/13) sin(2π/13) sin(5π/13) / (sin(4π/13) sin(3π/13) sin(π/13))`
/// equals `A + B√13` with `(A, B) = (3/2, 1/2)`.
#[derive(Debug, Clone)]
pub struct UnitCertificate {
    pub p: CycloElem,
    pub q: CycloElem,
    /// The square root of 13 used, in the same field as `p` and `q`.
    pub sqrt13: CycloElem,
    pub a: BigRational,
    pub b: BigRational,
}

/// Numerator and denominator indices of `P`: the non-residues and residues
/// mod 13 below 13/2.
pub const UNIT_NUMERATOR: [i64; 3] = [6, 2, 5];
pub const UNIT_DENOMINATOR: [i64; 3] = [4, 3, 1];

fn sine_product(ctx: &Arc<CycloContext>, indices: impl Iterator<Item = i64>) -> Result<CycloElem> {
    let mut acc = CycloElem::one(ctx);
    for n in indices {
        acc = &acc * &sin_pi_in(ctx, &BigRational::new(n.into(), 13.into()))?;
    }
    Ok(acc)
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CyclotomyError::CertificateFailure(what.to_string()))
    }
}

/// Builds `P` and `Q = P²` in `Q(ζ_52)` and checks every relation of the
/// cyclotomic derivation exactly.
pub fn verify_unit_identity() -> Result<UnitCertificate> {
    let qr = check_period_prime(13)?;
    let ctx = cyclo_context(52)?;
    let sqrt13 = gauss_sum_sqrt(13)?.lift(&ctx)?;
    let int = |n: i64| CycloElem::from_integer(&ctx, n);

    let p = sine_product(&ctx, UNIT_NUMERATOR.into_iter())?
        .checked_div(&sine_product(&ctx, UNIT_DENOMINATOR.into_iter())?)?;
    let q = &p * &p;

    let qnr_all = sine_product(&ctx, (1..13).filter(|n| !qr.contains(&(*n as u64))))?;
    let qr_all = sine_product(&ctx, qr.iter().map(|&r| r as i64))?;
    require(
        q == qnr_all.checked_div(&qr_all)?,
        "Q = prod_QNR sin / prod_QR sin",
    )?;

    let periods = period_polynomials(13)?;
    let y1 = CycloElem::from_rational(&ctx, &BigRational::from_integer(periods.y_at(1)));
    let z1 = CycloElem::from_rational(&ctx, &BigRational::from_integer(periods.z_at(1)));
    let lhs = &q * &(&y1 - &(&sqrt13 * &z1));
    require(
        lhs == &y1 + &(&sqrt13 * &z1),
        "Q (Y(1) - sqrt13 Z(1)) = Y(1) + sqrt13 Z(1)",
    )?;
    require(
        &q * &(&int(13) - &(&sqrt13 * &int(3))) == &int(13) + &(&sqrt13 * &int(3)),
        "Q (13 - 3 sqrt13) = 13 + 3 sqrt13",
    )?;
    require(&p - &p.invert()? == int(3), "P - 1/P = 3")?;
    let d = &(&p * &int(2)) - &int(3);
    require(&d * &d == int(13), "(2P - 3)^2 = 13")?;

    let half = BigRational::new(1.into(), 2.into());
    let b = if d == sqrt13 {
        half.clone()
    } else if d == -&sqrt13 {
        -half.clone()
    } else {
        return Err(CyclotomyError::CertificateFailure(
            "2P - 3 = ±sqrt13".into(),
        ));
    };
    Ok(UnitCertificate {
        p,
        q,
        sqrt13,
        a: BigRational::new(3.into(), 2.into()),
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_mod_13_and_5() {
        assert_eq!(
            quadratic_residues(13)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            [1, 3, 4, 9, 10, 12]
        );
        assert_eq!(
            quadratic_residues(5)
                .unwrap()
                .into_iter()
                .collect::<Vec<_>>(),
            [1, 4]
        );
        assert_eq!(quadratic_residues(9), Err(CyclotomyError::NotPrime(9)));
        assert_eq!(quadratic_residues(2), Err(CyclotomyError::NotPrime(2)));
    }

    #[test]
    fn gauss_sum_classes() {
        assert_eq!(
            gauss_sum_sqrt(7).unwrap_err(),
            CyclotomyError::WrongResidueClass(7)
        );
        let g = gauss_sum_sqrt(5).unwrap();
        assert_eq!(&g * &g, CycloElem::from_integer(g.context(), 5));
    }

    #[test]
    fn period_polynomials_for_five() {
        let pair = period_polynomials(5).unwrap();
        let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(pair.y, ints(&[2, 1, 2]));
        assert_eq!(pair.z, ints(&[0, 1]));
        assert_eq!(
            period_polynomials(109).unwrap_err(),
            CyclotomyError::TooLarge(109)
        );
    }

    #[test]
    fn unit_certificate() {
        let cert = verify_unit_identity().unwrap();
        assert_eq!(cert.b, BigRational::new(1.into(), 2.into()));
    }
}
