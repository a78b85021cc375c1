use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{find_identity, instantiate, CatalogError, IdentityRecord, Mode};
use crate::exact::{cyclo_context, eval_exact_in, required_order, ExactError, Fraction};
use crate::expr::{substitute, Bindings, TrigExpr};
use crate::numeric::{
    bits_for_digits, cyclo_to_complex, eval_numeric, BigComplex, BigFloat, NumBindings,
};

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Verified,
    Failed,
    HypothesisViolated,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "Verified",
            Status::Failed => "Failed",
            Status::HypothesisViolated => "HypothesisViolated",
            Status::Error => "Error",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of verifying one parameter instance.
///
/// Decimal values carry `digits` significant digits. Exact rationals are
/// present when exact mode found the side to be rational.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationResult {
    pub id: String,
    pub params: Bindings,
    pub mode: Mode,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub lhs_exact: Option<BigRational>,
    pub rhs_exact: Option<BigRational>,
    pub abs_diff: Option<String>,
    pub message: Option<String>,
}

impl VerificationResult {
    fn bare(record: &IdentityRecord, params: &Bindings, mode: Mode, status: Status) -> Self {
        VerificationResult {
            id: record.id.to_string(),
            params: params.clone(),
            mode,
            status,
            lhs: None,
            rhs: None,
            lhs_exact: None,
            rhs_exact: None,
            abs_diff: None,
            message: None,
        }
    }

    fn error(mut self, message: String) -> Self {
        self.status = Status::Error;
        self.message = Some(message);
        self
    }
}

/// Exact mode unless the identity needs integer parameters and some are not.
pub fn default_mode(id: &str, params: &Bindings) -> Result<Mode, CatalogError> {
    let record = find_identity(id)?;
    Ok(if record.exact_allowed(params) {
        Mode::Exact
    } else {
        Mode::Numeric
    })
}

fn decimal(x: &BigComplex, digits: u32) -> String {
    x.re.to_decimal(digits as usize)
}

fn abs_diff_text(x: &BigFloat) -> String {
    x.to_decimal(6)
}

struct ExactSides {
    lhs: Fraction,
    rhs: Fraction,
    equal: bool,
}

fn exact_sides(lhs: &TrigExpr, rhs: &TrigExpr) -> Result<ExactSides, ExactError> {
    let empty = Bindings::new();
    let ctx = cyclo_context(required_order(&[lhs, rhs], &empty)?)?;
    let l = eval_exact_in(&ctx, lhs, &empty)?;
    let r = eval_exact_in(&ctx, rhs, &empty)?;
    let equal = l.equals(&r)?;
    Ok(ExactSides {
        lhs: l,
        rhs: r,
        equal,
    })
}

fn side_value(expr: &TrigExpr, exact: &Fraction, digits: u32) -> Result<BigComplex, String> {
    if let Some(r) = exact.to_rational() {
        return Ok(BigComplex::from_real(BigFloat::from_rational(
            &r,
            bits_for_digits(digits),
        )));
    }
    match eval_numeric(expr, &NumBindings::new(), digits) {
        Ok(v) => Ok(v),
        Err(_) => exact
            .value()
            .map(|v| cyclo_to_complex(&v, digits))
            .map_err(|e| e.to_string()),
    }
}

/// Checks one instance. Hypothesis failures and backend errors are reported
/// through the status; only unknown ids and malformed parameter sets are
/// returned as errors.
pub fn verify_instance(
    id: &str,
    params: &Bindings,
    mode: Mode,
    digits: u32,
) -> Result<VerificationResult, CatalogError> {
    let record = find_identity(id)?;
    let base = VerificationResult::bare(record, params, mode, Status::Failed);
    let (lhs, rhs) = match instantiate(id, params) {
        Ok(sides) => sides,
        Err(e @ CatalogError::HypothesisViolated { .. }) => {
            let mut out = base;
            out.status = Status::HypothesisViolated;
            out.message = Some(e.to_string());
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    if mode == Mode::Exact && !record.exact_allowed(params) {
        return Ok(base.error(format!(
            "{} needs integer parameters in exact mode",
            record.id
        )));
    }
    Ok(match mode {
        Mode::Exact => verify_exact(base, &lhs, &rhs, digits),
        Mode::Numeric => verify_numeric(base, &lhs, &rhs, digits),
    })
}

fn verify_exact(
    mut out: VerificationResult,
    lhs: &TrigExpr,
    rhs: &TrigExpr,
    digits: u32,
) -> VerificationResult {
    let sides = match exact_sides(lhs, rhs) {
        Ok(s) => s,
        Err(e) => return out.error(e.to_string()),
    };
    out.status = if sides.equal {
        Status::Verified
    } else {
        Status::Failed
    };
    out.lhs_exact = sides.lhs.to_rational();
    out.rhs_exact = sides.rhs.to_rational();
    let l = side_value(lhs, &sides.lhs, digits);
    let r = side_value(rhs, &sides.rhs, digits);
    match (l, r) {
        (Ok(l), Ok(r)) => {
            out.lhs = Some(decimal(&l, digits));
            out.rhs = Some(decimal(&r, digits));
            out.abs_diff = Some(if sides.equal {
                "0".to_string()
            } else {
                abs_diff_text(&(&l - &r).abs())
            });
        }
        (Err(e), _) | (_, Err(e)) => out.message = Some(format!("decimal value unavailable: {e}")),
    }
    out
}

fn verify_numeric(
    mut out: VerificationResult,
    lhs: &TrigExpr,
    rhs: &TrigExpr,
    digits: u32,
) -> VerificationResult {
    let empty = NumBindings::new();
    let (l, r) = match (
        eval_numeric(lhs, &empty, digits),
        eval_numeric(rhs, &empty, digits),
    ) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return out.error(e.to_string()),
    };
    let diff = (&l - &r).abs();
    let tol = BigFloat::ten_pow_neg(digits.saturating_sub(10), bits_for_digits(digits));
    out.status = if diff < tol {
        Status::Verified
    } else {
        Status::Failed
    };
    out.lhs = Some(decimal(&l, digits));
    out.rhs = Some(decimal(&r, digits));
    out.abs_diff = Some(abs_diff_text(&diff));
    out
}

/// Which `j` values a sweep visits for each `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JChoice {
    /// Every `j` in `[1, 2n)` passing the hypotheses.
    All,
    Fixed(i64),
}

fn int_bindings(pairs: &[(&str, i64)]) -> Bindings {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), BigRational::from_integer(BigInt::from(*v))))
        .collect()
}

/// Admissible `(n, j)` parameter sets of a two-parameter family, ordered by
/// `n` then `j`.
pub fn admissible_params(
    id: &str,
    ns: RangeInclusive<i64>,
    js: JChoice,
) -> Result<Vec<Bindings>, CatalogError> {
    let record = find_identity(id)?;
    if record.param_names() != ["n", "j"] {
        return Err(CatalogError::InvalidArgument(format!(
            "{} is not a family in n and j; sweeps need one",
            record.id
        )));
    }
    let mut out = Vec::new();
    for n in ns {
        let candidates: Vec<i64> = match js {
            JChoice::All => (1..2 * n.max(0)).collect(),
            JChoice::Fixed(j) => vec![j],
        };
        for j in candidates {
            let p = int_bindings(&[("n", n), ("j", j)]);
            if record.holds(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Verifies every admissible instance, in `(n, j)` order.
pub fn sweep(
    id: &str,
    ns: RangeInclusive<i64>,
    js: JChoice,
    mode: Mode,
    digits: u32,
) -> Result<Vec<VerificationResult>, CatalogError> {
    admissible_params(id, ns, js)?
        .iter()
        .map(|p| verify_instance(id, p, mode, digits))
        .collect()
}

/// `S_1(k)` or `S_2(k)` from the closed form, at `digits` digits.
pub fn conjecture_value(k: i64, which: &str, digits: u32) -> Result<BigFloat, CatalogError> {
    let record = find_identity(which)?;
    if record.limit.is_none() {
        return Err(CatalogError::InvalidArgument(format!(
            "{} has no conjectured limit",
            record.id
        )));
    }
    if k < 1 {
        return Err(CatalogError::InvalidArgument(format!(
            "k must be positive, got {k}"
        )));
    }
    let rhs = substitute(&record.rhs, &int_bindings(&[("k", k)]))
        .map_err(|e| CatalogError::InvalidArgument(e.to_string()))?;
    let v = eval_numeric(&rhs, &NumBindings::new(), digits)
        .map_err(|e| CatalogError::InvalidArgument(e.to_string()))?;
    Ok(v.re)
}

/// Distance of `S_1(k)` from `-1/2` (or of `S_2(k)` from `1/2`).
pub fn conjecture_deviation(k: i64, which: &str, digits: u32) -> Result<BigFloat, CatalogError> {
    let value = conjecture_value(k, which, digits)?;
    let record = find_identity(which)?;
    let limit = record.limit.as_ref().expect("checked by conjecture_value");
    Ok((&value - &BigFloat::from_rational(limit, value.prec())).abs())
}
