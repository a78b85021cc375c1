//! Dense polynomial helpers over the integers and the rationals.
//!
//! Coefficient vectors are little-endian: index `i` holds the coefficient of `x^i`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient, by trial factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact quotient of `num` by the monic polynomial `den`.
///
/// Returns `None` if the remainder is nonzero.
pub fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(den.last().is_some_and(One::is_one));
    let dd = den.len() - 1;
    if num.len() < den.len() {
        return if num.iter().all(Zero::is_zero) {
            Some(vec![])
        } else {
            None
        };
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for top in (dd..num.len()).rev() {
        let c = std::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        for (i, d) in den[..dd].iter().enumerate() {
            if !d.is_zero() {
                rem[top - dd + i] -= &c * d;
            }
        }
        quot[top - dd] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// The `m`-th cyclotomic polynomial, obtained by dividing `x^m - 1` by `Φ_d`
/// for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut memo = HashMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let poly = if m == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        let mut acc = vec![BigInt::zero(); m as usize + 1];
        acc[0] = BigInt::from(-1);
        acc[m as usize] = BigInt::one();
        for d in divisors(m) {
            if d == m {
                continue;
            }
            let phi_d = cyclotomic_memo(d, memo);
            acc = div_exact_monic(&acc, &phi_d).expect("cyclotomic factor divides x^m - 1");
        }
        acc
    };
    memo.insert(m, poly.clone());
    poly
}

// ---------------------------------------------------------------------------
// Rational polynomials, used by the extended Euclidean inverse.

pub type RatPoly = Vec<BigRational>;

fn trim_rat(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn monic_in_place(p: &mut RatPoly) -> BigRational {
    let lead = p.last().cloned().expect("nonzero polynomial");
    if !lead.is_one() {
        for c in p.iter_mut() {
            *c /= &lead;
        }
    }
    lead
}

/// Quotient and remainder of `a` by the monic polynomial `b`.
fn divrem_monic(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut rem = a.clone();
    let mut quot = vec![BigRational::zero(); a.len() - db];
    for top in (db..a.len()).rev() {
        let c = std::mem::replace(&mut rem[top], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (i, d) in b[..db].iter().enumerate() {
            if !d.is_zero() {
                rem[top - db + i] -= &c * d;
            }
        }
        quot[top - db] = c;
    }
    rem.truncate(db);
    trim_rat(&mut rem);
    trim_rat(&mut quot);
    (quot, rem)
}

fn mul_rat(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn sub_rat(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out: RatPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim_rat(&mut out);
    out
}

/// Solves `s·a ≡ 1 (mod modulus)` by the extended Euclidean algorithm over Q.
///
/// `modulus` must be monic and `a` must be coprime to it; returns `None` when
/// `a` is zero or shares a factor with the modulus.
pub fn inverse_mod(a: &[BigInt], modulus: &[BigInt]) -> Option<RatPoly> {
    let to_rat = |p: &[BigInt]| -> RatPoly {
        let mut v: RatPoly = p.iter().cloned().map(BigRational::from_integer).collect();
        trim_rat(&mut v);
        v
    };
    let mut r0 = to_rat(modulus);
    let mut r1 = to_rat(a);
    if r1.is_empty() {
        return None;
    }
    // Invariant: s_i · a ≡ r_i (mod modulus).
    let mut s0: RatPoly = vec![];
    let mut s1: RatPoly = vec![BigRational::one()];
    let lead = monic_in_place(&mut r1);
    for c in s1.iter_mut() {
        *c /= &lead;
    }
    while r1.len() > 1 {
        let (q, mut r2) = divrem_monic(&r0, &r1);
        let mut s2 = sub_rat(&s0, &mul_rat(&q, &s1));
        if r2.is_empty() {
            return None;
        }
        let lead = monic_in_place(&mut r2);
        for c in s2.iter_mut() {
            *c /= &lead;
        }
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r1 is the constant 1 now.
    let modulus_rat = to_rat(modulus);
    let (_, s) = divrem_monic(&s1, &modulus_rat);
    Some(s)
}

/// Least common multiple of the denominators, and the integer numerators over it.
pub fn clear_denominators(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (num, den)
}

pub fn abs_max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}
