//! The identity table. Expressions are stored as DSL text and parsed once.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{Hypothesis, ParamSpec};
use crate::expr::Bindings;

pub(super) struct RawRecord {
    pub id: &'static str,
    pub anchor: &'static str,
    pub params: &'static [ParamSpec],
    pub hypothesis_text: &'static str,
    pub hypothesis: Hypothesis,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub limit: Option<(i64, i64)>,
    /// Exact mode accepts only integer parameter values.
    pub exact_needs_integers: bool,
}

const N: ParamSpec = ParamSpec {
    name: "n",
    domain: "positive integer",
};
const J: ParamSpec = ParamSpec {
    name: "j",
    domain: "positive integer",
};
const K: ParamSpec = ParamSpec {
    name: "k",
    domain: "positive integer",
};

fn int(params: &Bindings, name: &str) -> Option<i64> {
    params
        .get(name)
        .filter(|v| v.is_integer())
        .and_then(|v| v.to_integer().to_i64())
}

fn positive(params: &Bindings, name: &str) -> bool {
    params.get(name).is_some_and(|v| v.is_positive())
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

fn even_n_j_2_mod_4(p: &Bindings) -> bool {
    match (int(p, "n"), int(p, "j")) {
        (Some(n), Some(j)) => n >= 2 && n % 2 == 0 && j > 0 && j % 4 == 2 && gcd(j / 2, n / 2) == 1,
        _ => false,
    }
}

fn odd_n_even_j(p: &Bindings) -> bool {
    match (int(p, "n"), int(p, "j")) {
        (Some(n), Some(j)) => n >= 1 && n % 2 == 1 && j >= 2 && j % 2 == 0 && gcd(j, n) == 1,
        _ => false,
    }
}

fn odd_n_nonvanishing(p: &Bindings) -> bool {
    match (int(p, "n"), int(p, "j")) {
        (Some(n), Some(j)) if n >= 1 && n % 2 == 1 && j >= 1 && gcd(j, n) == 1 => {
            (0..=(n - 3) / 2).all(|k| (j * (2 * k + 1)) % n != 0)
        }
        _ => false,
    }
}

fn positive_k(p: &Bindings) -> bool {
    int(p, "k").is_some_and(|k| k >= 1)
}

/// `cos(2πa/(bk+c)) ≠ 0`, i.e. `4a/(bk+c)` is not an odd integer.
fn abc_hypothesis(p: &Bindings) -> bool {
    if !(positive(p, "a") && positive(p, "b") && positive(p, "c") && positive_k(p)) {
        return false;
    }
    let (a, b, c, k) = (&p["a"], &p["b"], &p["c"], &p["k"]);
    let ratio = a * BigInt::from(4) / (b * k + c);
    !(ratio.is_integer() && ratio.to_integer().is_odd())
}

fn always(_: &Bindings) -> bool {
    true
}

/// `sin(yπ/2) ≠ 0`.
fn t3_hypothesis(p: &Bindings) -> bool {
    if !positive_k(p) {
        return false;
    }
    let half_y: BigRational = &p["y"] / BigInt::from(2);
    !half_y.is_integer()
}

pub(super) fn raw_records() -> Vec<RawRecord> {
    vec![
        RawRecord {
            id: "T21",
            anchor: "half-range sum over k < n/2 for even n, equal to (n^2-4)/12",
            params: &[N, J],
            hypothesis_text: "n even, j ≡ 2 (mod 4), gcd(j/2, n/2) = 1",
            hypothesis: even_n_j_2_mod_4,
            lhs: "sum(k=1..n/2-1, sin((j-1)*k*pi/n)*sin((j+1)*k*pi/n) / (sin(k*pi/n)^2 * sin(j*k*pi/n)^2))",
            rhs: "(n^2-4)/12",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "T22",
            anchor: "half-range sum over odd multiples of pi/(2n) for even n, equal to n^2/4",
            params: &[N, J],
            hypothesis_text: "n even, j ≡ 2 (mod 4), gcd(j/2, n/2) = 1",
            hypothesis: even_n_j_2_mod_4,
            lhs: "sum(k=0..n/2-1, sin((j-1)*(2*k+1)*pi/(2*n))*sin((j+1)*(2*k+1)*pi/(2*n)) / (sin((2*k+1)*pi/(2*n))^2 * sin(j*(2*k+1)*pi/(2*n))^2))",
            rhs: "n^2/4",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "T23",
            anchor: "sum over odd multiples of pi/(2n) for odd n, equal to (n^2-1)/3",
            params: &[N, J],
            hypothesis_text: "n odd, j even, gcd(j, n) = 1",
            hypothesis: odd_n_even_j,
            lhs: "sum(k=0..(n-3)/2, sin((j-1)*(2*k+1)*pi/(2*n))*sin((j+1)*(2*k+1)*pi/(2*n)) / (sin((2*k+1)*pi/(2*n))^2 * sin(j*(2*k+1)*pi/(2*n))^2))",
            rhs: "(n^2-1)/3",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "T24",
            anchor: "sum over odd multiples of pi/n for odd n, equal to 0",
            params: &[N, J],
            hypothesis_text: "n odd, gcd(j, n) = 1, j(2k+1) not a multiple of n for 0 <= k <= (n-3)/2",
            hypothesis: odd_n_nonvanishing,
            lhs: "sum(k=0..(n-3)/2, sin((j-1)*(2*k+1)*pi/n)*sin((j+1)*(2*k+1)*pi/n) / (sin((2*k+1)*pi/n)^2 * sin(j*(2*k+1)*pi/n)^2))",
            rhs: "0",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "T32",
            anchor: "alternating sum of sin^2((2j+1)pi a/(bk+c)) in closed form",
            params: &[
                ParamSpec {
                    name: "a",
                    domain: "positive real",
                },
                ParamSpec {
                    name: "b",
                    domain: "positive real",
                },
                ParamSpec {
                    name: "c",
                    domain: "positive real",
                },
                K,
            ],
            hypothesis_text: "a, b, c > 0, k >= 1, cos(2 pi a/(bk+c)) != 0",
            hypothesis: abc_hypothesis,
            lhs: "sum(j=0..2*k-1, cos(j*pi)*sin((2*j+1)*pi*a/(b*k+c))^2)",
            rhs: "-sin(4*pi*a*k/(b*k+c))^2/(2*cos(2*pi*a/(b*k+c)))",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "C31A",
            anchor: "alternating sum S_1(k) over 2k terms, tending to -1/2",
            params: &[K],
            hypothesis_text: "k >= 1",
            hypothesis: positive_k,
            lhs: "sum(j=0..2*k-1, cos(j*pi)*sin((2*j+1)*pi/(8*k+2))^2)",
            rhs: "-sin(4*pi*k/(8*k+2))^2/(2*cos(2*pi/(8*k+2)))",
            limit: Some((-1, 2)),
            exact_needs_integers: true,
        },
        RawRecord {
            id: "C31B",
            anchor: "alternating sum S_2(k) over 2k+1 terms, tending to 1/2",
            params: &[K],
            hypothesis_text: "k >= 1",
            hypothesis: positive_k,
            lhs: "sum(j=0..2*k, cos(j*pi)*sin((2*j+1)*pi/(8*k+6))^2)",
            rhs: "-sin(4*pi*k/(8*k+6))^2/(2*cos(2*pi/(8*k+6))) + sin((4*k+1)*pi/(8*k+6))^2",
            limit: Some((1, 2)),
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L15",
            anchor: "three sine quotients of multiples of pi/15, equal to 0",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(2*pi/15)/sin(pi/15) - sin(7*pi/15)/sin(4*pi/15) - sin(3*pi/15)/sin(6*pi/15)",
            rhs: "0",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L17A",
            anchor: "eight sine quotients of multiples of pi/17, equal to 1",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(6*pi/17)/sin(3*pi/17) - sin(4*pi/17)/sin(2*pi/17) - sin(8*pi/17)/sin(4*pi/17) + sin(2*pi/17)/sin(pi/17) + sin(7*pi/17)/sin(5*pi/17) - sin(5*pi/17)/sin(6*pi/17) + sin(3*pi/17)/sin(7*pi/17) - sin(pi/17)/sin(8*pi/17)",
            rhs: "1",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L17B",
            anchor: "four quotients of sine pairs at multiples of pi/17, equal to -1",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(6*pi/17)*sin(7*pi/17)/(sin(3*pi/17)*sin(5*pi/17)) + sin(4*pi/17)*sin(pi/17)/(sin(2*pi/17)*sin(8*pi/17)) - sin(8*pi/17)*sin(2*pi/17)/(sin(4*pi/17)*sin(pi/17)) - sin(5*pi/17)*sin(3*pi/17)/(sin(6*pi/17)*sin(7*pi/17))",
            rhs: "-1",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L13A",
            anchor: "six sine quotients of multiples of pi/13, equal to -1",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(4*pi/13)/sin(2*pi/13) - sin(6*pi/13)/sin(3*pi/13) - sin(2*pi/13)/sin(pi/13) + sin(5*pi/13)/sin(4*pi/13) - sin(3*pi/13)/sin(5*pi/13) + sin(pi/13)/sin(6*pi/13)",
            rhs: "-1",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L13B",
            anchor: "three quotients of sine pairs at multiples of pi/13, equal to 1",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(4*pi/13)*sin(6*pi/13)/(sin(2*pi/13)*sin(3*pi/13)) - sin(2*pi/13)*sin(3*pi/13)/(sin(pi/13)*sin(5*pi/13)) - sin(5*pi/13)*sin(pi/13)/(sin(4*pi/13)*sin(6*pi/13))",
            rhs: "1",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L13C",
            anchor: "reciprocal quotients of sine pairs at multiples of pi/13, equal to -4",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(2*pi/13)*sin(3*pi/13)/(sin(4*pi/13)*sin(6*pi/13)) - sin(pi/13)*sin(5*pi/13)/(sin(2*pi/13)*sin(3*pi/13)) - sin(4*pi/13)*sin(6*pi/13)/(sin(5*pi/13)*sin(pi/13))",
            rhs: "-4",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "L13D",
            anchor: "P - 1/P for the non-residue/residue sine quotient P at pi/13, equal to 3",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(6*pi/13)*sin(2*pi/13)*sin(5*pi/13)/(sin(4*pi/13)*sin(3*pi/13)*sin(pi/13)) - sin(4*pi/13)*sin(3*pi/13)*sin(pi/13)/(sin(6*pi/13)*sin(2*pi/13)*sin(5*pi/13))",
            rhs: "3",
            limit: None,
            exact_needs_integers: true,
        },
        RawRecord {
            id: "LEM-T1",
            anchor: "difference of squared sines sin^2(u+t) - sin^2(u-t) = sin 2u sin 2t (u, t in units of pi)",
            params: &[
                ParamSpec {
                    name: "u",
                    domain: "rational (multiple of pi)",
                },
                ParamSpec {
                    name: "t",
                    domain: "rational (multiple of pi)",
                },
            ],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "sin(u*pi+t*pi)^2 - sin(u*pi-t*pi)^2",
            rhs: "sin(2*u*pi)*sin(2*t*pi)",
            limit: None,
            exact_needs_integers: false,
        },
        RawRecord {
            id: "LEM-T3",
            anchor: "sum of sines in arithmetic progression (x, y in units of pi)",
            params: &[
                ParamSpec {
                    name: "x",
                    domain: "rational (multiple of pi)",
                },
                ParamSpec {
                    name: "y",
                    domain: "rational (multiple of pi)",
                },
                K,
            ],
            hypothesis_text: "k >= 1, sin(y pi/2) != 0",
            hypothesis: t3_hypothesis,
            lhs: "sum(n=0..k-1, sin(x*pi+n*y*pi))",
            rhs: "sin(x*pi+(k-1)*y*pi/2)*sin(k*y*pi/2)/sin(y*pi/2)",
            limit: None,
            exact_needs_integers: false,
        },
        RawRecord {
            id: "LEM-COS4",
            anchor: "product of four cosines as a sum of eight cosines (a, b, c, d in units of pi)",
            params: &[
                ParamSpec {
                    name: "a",
                    domain: "rational (multiple of pi)",
                },
                ParamSpec {
                    name: "b",
                    domain: "rational (multiple of pi)",
                },
                ParamSpec {
                    name: "c",
                    domain: "rational (multiple of pi)",
                },
                ParamSpec {
                    name: "d",
                    domain: "rational (multiple of pi)",
                },
            ],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "cos(a*pi)*cos(b*pi)*cos(c*pi)*cos(d*pi)",
            rhs: "(cos((a+b+c+d)*pi) + cos((a+b+c-d)*pi) + cos((a+b-c+d)*pi) + cos((a+b-c-d)*pi) + cos((a-b+c+d)*pi) + cos((a-b+c-d)*pi) + cos((a-b-c+d)*pi) + cos((a-b-c-d)*pi))/8",
            limit: None,
            exact_needs_integers: false,
        },
        RawRecord {
            id: "LEM-COSPROD",
            anchor: "product of cos(n pi/13) for n = 1..6, equal to 1/64",
            params: &[],
            hypothesis_text: "none",
            hypothesis: always,
            lhs: "cos(pi/13)*cos(2*pi/13)*cos(3*pi/13)*cos(4*pi/13)*cos(5*pi/13)*cos(6*pi/13)",
            rhs: "1/64",
            limit: None,
            exact_needs_integers: true,
        },
    ]
}
