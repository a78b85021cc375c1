//! Command-line front end for `trigsum`.
//!
//! Every command writes one report record per line (JSON by default, CSV
//! with `--format csv`). Exit codes: 0 when every check is verified, 1 when
//! at least one check failed, 2 for usage, parse and hypothesis errors.

mod parse;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};
use trigsum::catalog::{
    conjecture_deviation, conjecture_value, default_mode, find_identity, list_identities,
    verify_instance, JChoice, Mode, VerificationResult,
};
use trigsum::cyclotomy::{period_polynomials, quadratic_residues, verify_unit_identity};
use trigsum::exact::{cyclo_context, eval_exact_in, required_order, ExactError, Fraction};
use trigsum::expr::{parse as parse_expr, Bindings, SourceError, TrigExpr};
use trigsum::numeric::{
    bits_for_digits, cyclo_to_complex, eval_numeric, numeric_bindings, rectangle_contour_breakdown,
    residue_2pii, residue_sum, BigComplex, BigFloat, KernelId, KernelSpec, DEFAULT_DIGITS,
    MIN_DIGITS,
};

pub use parse::{parse_assignment, parse_range, parse_rational};
pub use report::{write_records, Format, ReportRecord};

/// Environment variable overriding the default precision.
pub const DIGITS_ENV: &str = "TRIGSUM_DIGITS";

/// Status used by informational commands that compute without checking.
pub const COMPUTED: &str = "Computed";

#[derive(Debug, Parser)]
#[command(
    name = "trigsum",
    version,
    about = "Verify finite trigonometric sum identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify one instance of a catalog identity.
    Verify(VerifyArgs),
    /// Verify every admissible (n, j) of a two-parameter family.
    Sweep(SweepArgs),
    /// Residue of a contour kernel at a pole, reported as 2πi·Res.
    Residue(ResidueArgs),
    /// Rectangle contour integral of a kernel, checked against its residues.
    Contour(ContourArgs),
    /// Quadratic residues and period polynomials for a prime.
    Cyclotomy(CyclotomyArgs),
    /// Distance of the conjectured sums from their limits.
    Limits(LimitsArgs),
    /// Evaluate a DSL expression.
    Eval(EvalArgs),
    /// Print the identity catalog.
    List(ListArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write records to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    #[arg(long, value_parser = parse_rational)]
    n: Option<BigRational>,
    #[arg(long, value_parser = parse_rational)]
    j: Option<BigRational>,
    #[arg(long, value_parser = parse_rational)]
    a: Option<BigRational>,
    #[arg(long, value_parser = parse_rational)]
    b: Option<BigRational>,
    #[arg(long, value_parser = parse_rational)]
    c: Option<BigRational>,
    #[arg(long, value_parser = parse_rational)]
    k: Option<BigRational>,
    /// Any other parameter, as name=value.
    #[arg(long = "param", value_parser = parse_assignment)]
    params: Vec<(String, BigRational)>,
    #[arg(long)]
    mode: Option<ModeArg>,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        }
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    id: String,
    /// Inclusive range LO..HI.
    #[arg(long, value_parser = parse_range)]
    n: std::ops::RangeInclusive<i64>,
    /// Every admissible j below 2n (the default).
    #[arg(long, conflicts_with = "j")]
    all_j: bool,
    #[arg(long)]
    j: Option<i64>,
    #[arg(long)]
    mode: Option<ModeArg>,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct KernelArgs {
    /// hh2, hh7 or hh12.
    #[arg(long)]
    kernel: KernelId,
    #[arg(long)]
    n: u64,
}

#[derive(Debug, Args)]
struct ResidueArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse_rational)]
    pole: BigRational,
    #[arg(long, value_parser = parse_rational, default_value = "1/4")]
    radius: BigRational,
    /// Initial number of circle nodes (a power of two, at least 16).
    #[arg(long, default_value_t = 16)]
    points: usize,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ContourArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_parser = parse_rational)]
    height: BigRational,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CyclotomyArgs {
    #[arg(long)]
    p: u64,
    /// Include the coefficients of Y and Z.
    #[arg(long)]
    emit_poly: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct LimitsArgs {
    /// C31A or C31B.
    #[arg(long)]
    which: String,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    expr: String,
    /// Expected value, as another expression; the record then reports
    /// Verified or Failed.
    #[arg(long)]
    expect: Option<String>,
    #[arg(long = "param", value_parser = parse_assignment)]
    params: Vec<(String, BigRational)>,
    #[arg(long)]
    mode: Option<ModeArg>,
    #[arg(long)]
    digits: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ListArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// A failure that ends the command with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Residue(a) => cmd_residue(a, out),
        Command::Contour(a) => cmd_contour(a, out),
        Command::Cyclotomy(a) => cmd_cyclotomy(a, out),
        Command::Limits(a) => cmd_limits(a, out),
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::List(a) => cmd_list(a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn resolve_digits(flag: Option<u32>) -> Result<u32, UsageError> {
    let (digits, source) = match flag {
        Some(d) => (d, "--digits".to_string()),
        None => match std::env::var(DIGITS_ENV) {
            Ok(v) => {
                let d = v.trim().parse().map_err(|_| {
                    UsageError(format!("{DIGITS_ENV}='{v}' is not a positive integer"))
                })?;
                (d, DIGITS_ENV.to_string())
            }
            Err(_) => (DEFAULT_DIGITS, "default".to_string()),
        },
    };
    if digits < MIN_DIGITS {
        return Err(UsageError(format!(
            "{source}: {digits} digits is below the minimum of {MIN_DIGITS}"
        )));
    }
    Ok(digits)
}

/// 0 if everything verified or computed, 1 on a failure, 2 on hypothesis
/// violations and backend errors.
pub fn exit_code<'a>(statuses: impl IntoIterator<Item = &'a str>) -> i32 {
    statuses
        .into_iter()
        .map(|s| match s {
            "Verified" | COMPUTED => 0,
            "Failed" => 1,
            _ => 2,
        })
        .max()
        .unwrap_or(0)
}

fn emit(records: &[ReportRecord], output: &OutputArgs, out: &mut dyn Write) -> CmdResult {
    match &output.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| UsageError(format!("--out {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_records(&mut w, records, output.format)?;
            w.flush()?;
        }
        None => write_records(out, records, output.format)?,
    }
    Ok(exit_code(records.iter().map(|r| r.status.as_str())))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_millis() as u64)
}

fn report_problems(records: &[VerificationResult], err: &mut dyn Write) {
    for r in records.iter().filter(|r| r.message.is_some()) {
        let _ = writeln!(
            err,
            "{} {}: {}",
            r.id,
            r.status,
            r.message.as_deref().unwrap_or("")
        );
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let digits = resolve_digits(a.digits)?;
    let mut params = Bindings::new();
    let named = [
        ("n", a.n),
        ("j", a.j),
        ("a", a.a),
        ("b", a.b),
        ("c", a.c),
        ("k", a.k),
    ];
    for (name, value) in named {
        if let Some(v) = value {
            params.insert(name.to_string(), v);
        }
    }
    for (name, value) in a.params {
        if params.insert(name.clone(), value).is_some() {
            return Err(UsageError(format!("--param {name} given twice")));
        }
    }
    let mode = match a.mode {
        Some(m) => m.into(),
        None => default_mode(&a.id, &params)?,
    };
    let (result, ms) = timed(|| verify_instance(&a.id, &params, mode, digits));
    let result = result?;
    report_problems(std::slice::from_ref(&result), err);
    emit(
        &[ReportRecord::from_verification(&result, ms)],
        &a.output,
        out,
    )
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let digits = resolve_digits(a.digits)?;
    find_identity(&a.id)?;
    let js = match a.j {
        Some(j) => JChoice::Fixed(j),
        None => JChoice::All,
    };
    let mode = a.mode.map(Mode::from).unwrap_or(Mode::Exact);
    let pairs = trigsum::catalog::admissible_params(&a.id, a.n.clone(), js)?;
    let mut records = Vec::with_capacity(pairs.len());
    let mut results = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let (r, ms) = timed(|| verify_instance(&a.id, p, mode, digits));
        let r = r?;
        records.push(ReportRecord::from_verification(&r, ms));
        results.push(r);
    }
    report_problems(&results, err);
    let verified = records.iter().filter(|r| r.status == "Verified").count();
    let _ = writeln!(
        err,
        "{}: {} instances, {} verified",
        a.id.to_uppercase(),
        records.len(),
        verified
    );
    emit(&records, &a.output, out)
}

/// Parts below `10^-digits` in magnitude are rounding noise and print as 0.
fn complex_text(z: &BigComplex, digits: u32) -> String {
    let tiny = BigFloat::ten_pow_neg(digits, z.prec());
    let clean = |x: &BigFloat| {
        if x.abs() < tiny {
            BigFloat::zero(x.prec())
        } else {
            x.clone()
        }
    };
    BigComplex::new(clean(&z.re), clean(&z.im)).to_decimal(digits as usize)
}

fn cmd_residue(a: ResidueArgs, out: &mut dyn Write) -> CmdResult {
    let digits = resolve_digits(a.digits)?;
    let spec = KernelSpec::new(a.kernel.kernel, a.kernel.n)?;
    let (r, ms) = timed(|| residue_2pii(&spec, &a.pole, &a.radius, a.points, digits));
    let r = r?;
    let prec = bits_for_digits(digits);
    // Res = value / (2πi)
    let two_pi = BigFloat::pi(prec).mul_pow2(1);
    let res = BigComplex::new(&r.value.im / &two_pi, -&(&r.value.re / &two_pi));
    let mut rec = ReportRecord::new("residue", "numeric", COMPUTED)
        .param("kernel", json!(spec.kernel.name()))
        .param("n", json!(spec.n))
        .param("pole", report::rational_value(&a.pole))
        .extra("order", json!(r.order))
        .extra("residue", json!(complex_text(&res, digits)))
        .extra("points", json!(r.points))
        .extra("convergence", json!(r.convergence.to_decimal(6)));
    rec.lhs = Some(complex_text(&r.value, digits));
    rec.elapsed_ms = ms;
    emit(&[rec], &a.output, out)
}

fn cmd_contour(a: ContourArgs, out: &mut dyn Write) -> CmdResult {
    let digits = resolve_digits(a.digits)?;
    let spec = KernelSpec::new(a.kernel.kernel, a.kernel.n)?;
    let (res, ms) = timed(|| -> Result<_, UsageError> {
        let c = rectangle_contour_breakdown(&spec, &a.height, digits)?;
        let s = residue_sum(&spec, digits)?;
        Ok((c, s))
    });
    let (c, s) = res?;
    let diff = (&c.value - &s).abs();
    let tol = BigFloat::ten_pow_neg(digits - 10, bits_for_digits(digits));
    let status = if diff < tol { "Verified" } else { "Failed" };
    let side = |z: &BigComplex| json!(complex_text(z, 12));
    let mut rec = ReportRecord::new("contour", "numeric", status)
        .param("kernel", json!(spec.kernel.name()))
        .param("n", json!(spec.n))
        .param("height", report::rational_value(&a.height))
        .extra(
            "sides",
            json!({"bottom": side(&c.bottom), "right": side(&c.right), "top": side(&c.top), "left": side(&c.left)}),
        )
        .extra("horizontal_magnitude", json!(c.horizontal_magnitude.to_decimal(12)))
        .extra("evaluations", json!(c.evaluations));
    rec.lhs = Some(complex_text(&c.value, digits));
    rec.rhs = Some(complex_text(&s, digits));
    rec.abs_diff = Some(diff.to_decimal(6));
    rec.elapsed_ms = ms;
    emit(&[rec], &a.output, out)
}

fn int_list(v: &[num_bigint::BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|c| json!(c.to_string().parse::<i64>().unwrap_or(0)))
            .collect(),
    )
}

fn cmd_cyclotomy(a: CyclotomyArgs, out: &mut dyn Write) -> CmdResult {
    let (res, ms) = timed(|| -> Result<_, UsageError> {
        let qr = quadratic_residues(a.p)?;
        let pair = period_polynomials(a.p)?;
        let unit = if a.p == 13 {
            Some(verify_unit_identity()?)
        } else {
            None
        };
        Ok((qr, pair, unit))
    });
    let (qr, pair, unit) = res?;
    let mut rec = ReportRecord::new("cyclotomy", "exact", "Verified")
        .param("p", json!(a.p))
        .extra("quadratic_residues", json!(qr))
        .extra("y_at_1", json!(pair.y_at(1).to_string()))
        .extra("z_at_1", json!(pair.z_at(1).to_string()));
    if a.emit_poly {
        rec = rec
            .extra("y", int_list(&pair.y))
            .extra("z", int_list(&pair.z));
    }
    if let Some(cert) = unit {
        rec = rec.extra(
            "unit",
            json!(format!("P = {} + {}*sqrt(13)", cert.a, cert.b)),
        );
    }
    rec.elapsed_ms = ms;
    emit(&[rec], &a.output, out)
}

fn cmd_limits(a: LimitsArgs, out: &mut dyn Write) -> CmdResult {
    let digits = resolve_digits(a.digits)?;
    let record = find_identity(&a.which)?;
    let limit = record
        .limit
        .clone()
        .ok_or_else(|| UsageError(format!("--which {} has no conjectured limit", a.which)))?;
    let (res, ms) = timed(|| -> Result<_, UsageError> {
        Ok((
            conjecture_value(a.k, record.id, digits)?,
            conjecture_deviation(a.k, record.id, digits)?,
        ))
    });
    let (value, deviation) = res?;
    let mut rec = ReportRecord::new(record.id, "numeric", COMPUTED)
        .param("k", json!(a.k))
        .extra("limit", json!(limit.to_string()));
    rec.lhs = Some(value.to_decimal(digits as usize));
    rec.rhs =
        Some(BigFloat::from_rational(&limit, bits_for_digits(digits)).to_decimal(digits as usize));
    rec.abs_diff = Some(deviation.to_decimal(6));
    rec.elapsed_ms = ms;
    emit(&[rec], &a.output, out)
}

fn source_diagnostic(flag: &str, text: &str, e: &SourceError) -> String {
    let line = text.lines().nth(e.line.saturating_sub(1)).unwrap_or("");
    let caret = " ".repeat(e.column.saturating_sub(1));
    format!("{flag}: {e}\n  {line}\n  {caret}^")
}

fn exact_pair(
    expr: &TrigExpr,
    expected: Option<&TrigExpr>,
    params: &Bindings,
) -> Result<(Fraction, Option<Fraction>), ExactError> {
    let mut all = vec![expr];
    all.extend(expected);
    let ctx = cyclo_context(required_order(&all, params)?)?;
    let value = eval_exact_in(&ctx, expr, params)?;
    let target = expected
        .map(|e| eval_exact_in(&ctx, e, params))
        .transpose()?;
    Ok((value, target))
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let digits = resolve_digits(a.digits)?;
    let expr =
        parse_expr(&a.expr).map_err(|e| UsageError(source_diagnostic("--expr", &a.expr, &e)))?;
    let expected = match &a.expect {
        Some(t) => {
            Some(parse_expr(t).map_err(|e| UsageError(source_diagnostic("--expect", t, &e)))?)
        }
        None => None,
    };
    let mut params = Bindings::new();
    for (k, v) in a.params {
        params.insert(k, v);
    }
    let explicit = a.mode.map(Mode::from);
    let mut rec = ReportRecord::new("eval", "exact", COMPUTED).extra("expr", json!(a.expr));
    rec.params = report::params_map(&params);
    let start = Instant::now();
    let exact = match explicit {
        Some(Mode::Numeric) => None,
        _ => match exact_pair(&expr, expected.as_ref(), &params) {
            Ok(pair) => Some(pair),
            Err(
                e @ (ExactError::Transcendental(_)
                | ExactError::NonRationalAngle(_)
                | ExactError::CapExceeded { .. }),
            ) if explicit.is_none() => {
                let _ = writeln!(
                    err,
                    "exact evaluation unavailable ({e}); using numeric mode"
                );
                None
            }
            Err(e) => return Err(e.into()),
        },
    };
    match exact {
        Some((f, target)) => {
            let value = f.value()?;
            rec.lhs_exact = f.to_rational().map(|r| r.to_string());
            rec.lhs = Some(complex_text(&cyclo_to_complex(&value, digits), digits));
            rec = rec
                .extra("field_order", json!(value.order()))
                .extra("field_element", json!(value.to_string()));
            if let Some(t) = target {
                let equal = f.equals(&t)?;
                let tv = cyclo_to_complex(&t.value()?, digits);
                rec.status = if equal { "Verified" } else { "Failed" }.into();
                rec.rhs_exact = t.to_rational().map(|r| r.to_string());
                rec.rhs = Some(complex_text(&tv, digits));
                rec.abs_diff = Some(if equal {
                    "0".into()
                } else {
                    (&cyclo_to_complex(&value, digits) - &tv)
                        .abs()
                        .to_decimal(6)
                });
            }
        }
        None => {
            rec.mode = "numeric".into();
            let bindings = numeric_bindings(&params, digits);
            let v = eval_numeric(&expr, &bindings, digits)?;
            rec.lhs = Some(complex_text(&v, digits));
            if let Some(e) = &expected {
                let t = eval_numeric(e, &bindings, digits)?;
                let diff = (&v - &t).abs();
                let tol = BigFloat::ten_pow_neg(digits - 10, bits_for_digits(digits));
                rec.status = if diff < tol { "Verified" } else { "Failed" }.into();
                rec.rhs = Some(complex_text(&t, digits));
                rec.abs_diff = Some(diff.to_decimal(6));
            }
        }
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    emit(&[rec], &a.output, out)
}

fn cmd_list(a: ListArgs, out: &mut dyn Write) -> CmdResult {
    for r in list_identities() {
        let params: Vec<Value> = r
            .params
            .iter()
            .map(|p| json!({"name": p.name, "domain": p.domain}))
            .collect();
        match a.format {
            Some(Format::Jsonl) => {
                let line = json!({
                    "id": r.id,
                    "anchor": r.anchor,
                    "params": params,
                    "hypothesis": r.hypothesis_text,
                    "lhs": r.lhs_src,
                    "rhs": r.rhs_src,
                });
                writeln!(out, "{line}")?;
            }
            Some(Format::Csv) => {
                return Err(UsageError("list supports --format jsonl only".into()))
            }
            None => {
                let names = r.param_names().join(", ");
                writeln!(out, "{:<12} ({names})  {}", r.id, r.anchor)?;
                writeln!(out, "    hypothesis: {}", r.hypothesis_text)?;
                writeln!(out, "    lhs: {}", r.lhs_src)?;
                writeln!(out, "    rhs: {}", r.rhs_src)?;
            }
        }
    }
    Ok(0)
}
