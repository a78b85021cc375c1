use std::io::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{Map, Value};
use trigsum::catalog::VerificationResult;
use trigsum::expr::Bindings;

/// One line of a report: a verified instance or the result of a command.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub id: String,
    pub params: Map<String, Value>,
    pub mode: String,
    pub status: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_exact: Option<String>,
    pub abs_diff: Option<String>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// Command-specific fields, serialized after the common ones.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

/// Integers become JSON numbers, other rationals `"p/q"` strings.
pub fn rational_value(r: &BigRational) -> Value {
    match r.is_integer().then(|| r.to_integer().to_i64()).flatten() {
        Some(i) => Value::from(i),
        None => Value::from(r.to_string()),
    }
}

pub fn params_map(params: &Bindings) -> Map<String, Value> {
    params
        .iter()
        .map(|(k, v)| (k.clone(), rational_value(v)))
        .collect()
}

impl ReportRecord {
    pub fn new(id: &str, mode: &str, status: &str) -> Self {
        ReportRecord {
            id: id.to_string(),
            params: Map::new(),
            mode: mode.to_string(),
            status: status.to_string(),
            lhs: None,
            rhs: None,
            lhs_exact: None,
            rhs_exact: None,
            abs_diff: None,
            elapsed_ms: 0,
            message: None,
            extra: Map::new(),
        }
    }

    pub fn from_verification(v: &VerificationResult, elapsed_ms: u64) -> Self {
        ReportRecord {
            id: v.id.clone(),
            params: params_map(&v.params),
            mode: v.mode.to_string(),
            status: v.status.to_string(),
            lhs: v.lhs.clone(),
            rhs: v.rhs.clone(),
            lhs_exact: v.lhs_exact.as_ref().map(|r| r.to_string()),
            rhs_exact: v.rhs_exact.as_ref().map(|r| r.to_string()),
            abs_diff: v.abs_diff.clone(),
            elapsed_ms,
            message: v.message.clone(),
            extra: Map::new(),
        }
    }

    pub fn param(mut self, name: &str, value: Value) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn extra(mut self, name: &str, value: Value) -> Self {
        self.extra.insert(name.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    params: String,
    mode: &'a str,
    status: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    lhs_exact: &'a str,
    rhs_exact: &'a str,
    abs_diff: &'a str,
    elapsed_ms: u64,
    message: &'a str,
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_records(
    out: &mut dyn Write,
    records: &[ReportRecord],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                let line = serde_json::to_string(r).map_err(std::io::Error::other)?;
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                let params: Vec<String> = r
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={}", plain(v)))
                    .collect();
                let s = |x: &Option<String>| x.clone().unwrap_or_default();
                let (lhs, rhs, le, re, d, m) = (
                    s(&r.lhs),
                    s(&r.rhs),
                    s(&r.lhs_exact),
                    s(&r.rhs_exact),
                    s(&r.abs_diff),
                    s(&r.message),
                );
                w.serialize(CsvRow {
                    id: &r.id,
                    params: params.join(";"),
                    mode: &r.mode,
                    status: &r.status,
                    lhs: &lhs,
                    rhs: &rhs,
                    lhs_exact: &le,
                    rhs_exact: &re,
                    abs_diff: &d,
                    elapsed_ms: r.elapsed_ms,
                    message: &m,
                })
                .map_err(std::io::Error::other)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_order_and_optional_fields() {
        let r = ReportRecord::new("L15", "exact", "Verified").param("n", Value::from(4));
        let line = serde_json::to_string(&r).unwrap();
        assert_eq!(
            line,
            r#"{"id":"L15","params":{"n":4},"mode":"exact","status":"Verified","lhs":null,"rhs":null,"abs_diff":null,"elapsed_ms":0}"#
        );
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        let mut r = ReportRecord::new("eval", "exact", "Computed");
        r.message = Some("a, b".into());
        let mut buf = Vec::new();
        write_records(&mut buf, &[r], Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "id,params,mode,status,lhs,rhs,lhs_exact,rhs_exact,abs_diff,elapsed_ms,message\n"
        ));
        assert!(text.contains("\"a, b\""));
    }
}
