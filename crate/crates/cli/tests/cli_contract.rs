use std::process::Command;

use serde_json::Value;
use trigsum_cli::run_with;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Outcome {
    let mut argv = vec!["trigsum".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn records(stdout: &str) -> Vec<Value> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn verify_l15_exits_zero_with_value_zero() {
    let o = run(&["verify", "--id", "L15", "--mode", "exact"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let recs = records(&o.stdout);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["status"], "Verified");
    assert_eq!(recs[0]["lhs"], "0");
    assert_eq!(recs[0]["lhs_exact"], "0");
    for key in [
        "id",
        "params",
        "mode",
        "status",
        "lhs",
        "rhs",
        "abs_diff",
        "elapsed_ms",
    ] {
        assert!(recs[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sweep_emits_one_record_per_admissible_pair() {
    let o = run(&[
        "sweep", "--id", "T21", "--n", "4..20", "--all-j", "--mode", "exact",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let mut expected = Vec::new();
    for n in (4..=20).step_by(2) {
        for j in (2..2 * n).step_by(4) {
            if gcd(j / 2, n / 2) == 1 {
                expected.push((n, j));
            }
        }
    }
    let got: Vec<(i64, i64)> = records(&o.stdout)
        .iter()
        .map(|r| {
            assert_eq!(r["status"], "Verified");
            (
                r["params"]["n"].as_i64().unwrap(),
                r["params"]["j"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn hypothesis_violation_exits_two() {
    let o = run(&["verify", "--id", "T21", "--n", "7", "--j", "2"]);
    assert_eq!(o.code, 2);
    assert_eq!(records(&o.stdout)[0]["status"], "HypothesisViolated");
    assert!(o.stderr.contains("hypothesis"));
}

#[test]
fn failed_check_exits_one() {
    let o = run(&["eval", "--expr", "cos(pi/5)", "--expect", "1/2"]);
    assert_eq!(o.code, 1);
    assert_eq!(records(&o.stdout)[0]["status"], "Failed");
    let o = run(&[
        "eval",
        "--expr",
        "4*cos(pi/5)^2 - 2*cos(pi/5)",
        "--expect",
        "1",
    ]);
    assert_eq!(o.code, 0);
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let o = run(&["sweep", "--id", "T21", "--n", "9..3"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--n"), "{}", o.stderr);
    let o = run(&["verify", "--id", "T99"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("T99"));
    let o = run(&["verify", "--id", "T21", "--n", "4"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("'j'"), "{}", o.stderr);
    let o = run(&["verify", "--id", "L15", "--digits", "3"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--digits"));
    let o = run(&["eval", "--expr", "sin(pi"]);
    assert_eq!(o.code, 2);
    assert!(
        o.stderr.contains("--expr") && o.stderr.contains("end of input"),
        "{}",
        o.stderr
    );
    let o = run(&["cyclotomy", "--p", "7"]);
    assert_eq!(o.code, 2);
    let o = run(&["frobnicate"]);
    assert_eq!(o.code, 2);
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("sweep"));
}

fn strip_elapsed(text: &str) -> Vec<Value> {
    records(text)
        .into_iter()
        .map(|mut r| {
            r.as_object_mut().unwrap().remove("elapsed_ms");
            r
        })
        .collect()
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["sweep", "--id", "T23", "--n", "3..11"][..],
        &[
            "verify", "--id", "T32", "--a", "0.3", "--b", "8", "--c", "2", "--k", "4", "--mode",
            "numeric",
        ][..],
        &[
            "residue", "--kernel", "hh12", "--n", "3", "--pole", "3/2", "--digits", "20",
        ][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(
            strip_elapsed(&a.stdout),
            strip_elapsed(&b.stdout),
            "{args:?}"
        );
    }
}

#[test]
fn csv_output_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t22.csv");
    let o = run(&[
        "sweep",
        "--id",
        "T22",
        "--n",
        "2..8",
        "--j",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "id,params,mode,status,lhs,rhs,lhs_exact,rhs_exact,abs_diff,elapsed_ms,message"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("T22,j=2;n=2,exact,Verified,1,1,1,1,0,"));
}

#[test]
fn informational_commands_succeed() {
    let o = run(&[
        "residue", "--kernel", "hh2", "--n", "4", "--pole", "0", "--digits", "30",
    ]);
    assert_eq!(o.code, 0);
    let r = &records(&o.stdout)[0];
    assert_eq!(r["lhs"], "-4");
    assert_eq!(r["order"], 3);

    let o = run(&[
        "contour", "--kernel", "hh7", "--n", "4", "--height", "4", "--digits", "20",
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(records(&o.stdout)[0]["status"], "Verified");

    let o = run(&["cyclotomy", "--p", "13", "--emit-poly"]);
    assert_eq!(o.code, 0);
    let r = &records(&o.stdout)[0];
    assert_eq!(r["y"], serde_json::json!([2, 1, 4, -1, 4, 1, 2]));
    assert_eq!(r["z"], serde_json::json!([0, 1, 0, 1, 0, 1]));
    assert_eq!(r["y_at_1"], "13");

    let o = run(&["limits", "--which", "C31A", "--k", "1", "--digits", "20"]);
    assert_eq!(o.code, 0);
    assert_eq!(records(&o.stdout)[0]["abs_diff"], "0.059017");

    let o = run(&["list"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("LEM-COSPROD"));
    let o = run(&["list", "--format", "jsonl"]);
    assert_eq!(records(&o.stdout).len(), 18);
}

#[test]
fn eval_with_parameters() {
    let o = run(&[
        "eval",
        "--expr",
        "sum(k=1..n-1, sin(k*pi/n)^2)",
        "--param",
        "n=7",
    ]);
    assert_eq!(o.code, 0);
    let r = &records(&o.stdout)[0];
    assert_eq!(r["lhs_exact"], "7/2");
    assert_eq!(r["mode"], "exact");
    let o = run(&[
        "eval",
        "--expr",
        "sin(1)^2 + cos(1)^2",
        "--expect",
        "1",
        "--digits",
        "20",
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(records(&o.stdout)[0]["mode"], "numeric");
}

#[test]
fn digits_come_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_trigsum");
    let out = Command::new(bin)
        .args(["verify", "--id", "T21", "--n", "6", "--j", "2"])
        .env("TRIGSUM_DIGITS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["lhs"], "2.66666666667");

    let out = Command::new(bin)
        .args(["verify", "--id", "L15"])
        .env("TRIGSUM_DIGITS", "seven")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("TRIGSUM_DIGITS"));
}
