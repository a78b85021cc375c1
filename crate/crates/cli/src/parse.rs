use std::ops::RangeInclusive;
use std::str::FromStr;

use num_rational::BigRational;

/// Integer, `p/q` or finite decimal, converted exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    if let Some((int_part, frac)) = t.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        let ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        if !ok(digits) || !ok(frac) || (digits.is_empty() && frac.is_empty()) {
            return Err(format!("'{text}' is not a number"));
        }
        let mantissa = format!("{}{digits}{frac}", if negative { "-" } else { "" });
        let mantissa = if mantissa == "-" || mantissa.is_empty() {
            "0".into()
        } else {
            mantissa
        };
        let num = num_bigint_from(&mantissa, text)?;
        let den = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let r = BigRational::from_str(t).map_err(|_| format!("'{text}' is not a rational number"))?;
    Ok(r)
}

fn num_bigint_from(s: &str, original: &str) -> Result<num_bigint::BigInt, String> {
    num_bigint::BigInt::from_str(s).map_err(|_| format!("'{original}' is not a number"))
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<RangeInclusive<i64>, String> {
    let int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| format!("'{text}' is not an integer range a..b"))
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (int(lo)?, int(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty range '{text}'"));
            }
            Ok(lo..=hi)
        }
        None => {
            let n = int(text)?;
            Ok(n..=n)
        }
    }
}

/// `name=value` with a rational value.
pub fn parse_assignment(text: &str) -> Result<(String, BigRational), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("'{text}' is not of the form name=value"))?;
    let name = name.trim();
    let valid = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(format!("'{name}' is not a valid parameter name"));
    }
    Ok((name.to_string(), parse_rational(value)?))
}
