//! Acceptance criteria, one PASS/FAIL line each. Arithmetic is exact, so
//! every check is an equality; a criterion also fails when it runs over its
//! time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ore_core::suites::{
    bezout_suite, common_factor_suite, degree_invariant_suite, hermite_suite, isotropy_suite, kernel_suite,
    lcm_suite, pairing_suite, regularize_suite, roundtrip_suite, witness_suite, SuiteReport,
};
use ore_core::regularize::DEFAULT_BUDGET;
use serde_json::Value;

const SEED: u64 = 42;

struct Verdict {
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn from_suites(reports: &[SuiteReport]) -> Verdict {
    let passed = reports.iter().all(|r| r.passed());
    let detail = reports
        .iter()
        .map(|r| {
            let seeds: Vec<u64> = r.failures.iter().take(5).map(|f| f.seed).collect();
            if seeds.is_empty() {
                format!("{} {}/{}", r.name, r.passes, r.trials)
            } else {
                format!("{} {}/{} failing seeds {seeds:?}", r.name, r.passes, r.trials)
            }
        })
        .collect::<Vec<_>>()
        .join("; ");
    Verdict {
        passed,
        detail,
        elapsed: reports.iter().map(|r| r.elapsed).sum(),
    }
}

/// One command-line case: arguments and the exit code it must produce.
struct Case {
    args: Vec<&'static str>,
    code: i32,
}

fn case(code: i32, args: &[&'static str]) -> Case {
    Case { args: args.to_vec(), code }
}

const DIAG: &str = r#"{"size":2,"rows":[["D","0"],["0","D^2"]]}"#;
const ZERO2: &str = r#"{"size":2,"rows":[["0","0"],["0","0"]]}"#;
const ONE2: &str = r#"{"size":2,"rows":[["1","0"],["0","1"]]}"#;
const RAGGED: &str = r#"{"size":2,"rows":[["D"]]}"#;

fn contract_cases() -> Vec<Case> {
    vec![
        case(0, &["gcd", "--side", "right", "D^2", "D"]),
        case(0, &["gcd", "--side", "left", DIAG, ONE2]),
        case(1, &["gcd", "0", "0"]),
        case(2, &["gcd", "D^", "D"]),
        case(2, &["gcd", "D"]),
        case(0, &["lcm", "D", "D + x"]),
        case(1, &["lcm", "D", "0"]),
        case(2, &["lcm", "D", "y"]),
        case(0, &["bezout", "x*D^2 - 1", "D + x"]),
        case(1, &["bezout", "D", DIAG]),
        case(2, &["bezout", "D", "(D"]),
        case(0, &["divide", "--side", "left", "D^3 + x", "x*D - 1"]),
        case(1, &["divide", "D", "0"]),
        case(2, &["divide", "D", "1/D"]),
        case(0, &["adjoint", "x*D^2 + 1"]),
        case(0, &["adjoint", DIAG]),
        case(2, &["adjoint", "x^-1"]),
        case(0, &["minfrac", "x*D^2 + x*D", "D^2 + D"]),
        case(1, &["minfrac", "D", "0"]),
        case(2, &["minfrac", "D", "D +"]),
        case(0, &["convert", "1", "D"]),
        case(1, &["convert", DIAG, ZERO2]),
        case(2, &["convert", "1", RAGGED]),
        case(0, &["equal", "1", "D", "x", "D*x"]),
        case(1, &["equal", "1", "0", "x", "D"]),
        case(2, &["equal", "1", "D", "x"]),
        case(0, &["ddet-deg", DIAG]),
        case(0, &["ddet-deg", r#"{"size":2,"rows":[["D","D"],["D","D"]]}"#]),
        case(2, &["ddet-deg", RAGGED]),
        case(2, &["ddet-deg", "{\"size\":2"]),
        case(0, &["hermite", r#"{"size":2,"rows":[["D","x"],["1","D^2"]]}"#]),
        case(2, &["hermite", r#"{"size":0,"rows":[]}"#]),
        case(0, &["regularize", ZERO2, ONE2]),
        case(1, &["regularize", ZERO2, ZERO2]),
        case(2, &["regularize", ZERO2, RAGGED]),
        case(3, &["regularize", "--budget", "1", ZERO2, ONE2]),
        case(0, &["witness-thm33", "D", "D + x", "x^3 + 3*x", "3*x"]),
        case(0, &["witness-thm33", "--modulus", "D^2 + 1", "D", "D + x", "(D + (x^2 + 1)/x)*x", "(D + 1/x)*x"]),
        case(1, &["witness-thm33", "D", "D + x", "x^3", "3*x"]),
        case(2, &["witness-thm33", "D", "D + x", "x^3 + ", "3*x"]),
        case(0, &["witness-cor34", "D*x", "x", "x^3", "3*x^2"]),
        case(1, &["witness-cor34", "--eps", "0", "D*x", "x", "x^3", "3*x^2"]),
        case(2, &["witness-cor34", "--eps", "D", "D*x", "x", "x^3", "3*x^2"]),
        case(0, &["isotropy", "D*x", "x", "1/x", "x^2"]),
        case(0, &["isotropy", "--modulus", "D^2", "D", "D"]),
        case(1, &["isotropy", "D", DIAG]),
        case(2, &["isotropy", "D", "x", "1/x", "D"]),
        case(0, &["kernel-poly", "D^2 - (2/x)*D + 2/x^2"]),
        case(1, &["kernel-poly", "0"]),
        case(2, &["kernel-poly", "D^2", "--degree", "two"]),
        case(0, &["selftest", "--seed", "42", "--trials", "2"]),
        case(2, &["selftest", "--trials", "many"]),
        case(2, &["no-such-command"]),
    ]
}

fn run_ore(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ore"))
        .args(args)
        .output()
        .expect("the ore binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn status_name(code: i32) -> &'static str {
    match code {
        0 => "ok",
        1 => "precondition-violated",
        2 => "parse-error",
        _ => "search-failure",
    }
}

fn cli_contract() -> Verdict {
    let start = Instant::now();
    let roundtrip = roundtrip_suite(500, SEED);
    let mut problems = Vec::new();
    let cases = contract_cases();
    for c in &cases {
        let (code, _) = run_ore(&c.args);
        if code != c.code {
            problems.push(format!("{:?} exited {code}, expected {}", c.args, c.code));
        }
        let mut json_args = vec!["--json"];
        json_args.extend(&c.args);
        let (code, out) = run_ore(&json_args);
        let parsed: Option<Value> = serde_json::from_str(out.trim()).ok();
        let status = parsed.as_ref().and_then(|v| v.get("status")).and_then(Value::as_str);
        if code != c.code || status != Some(status_name(c.code)) {
            problems.push(format!("--json {:?}: exit {code}, status {status:?}", c.args));
        }
    }
    let (_, gcd) = run_ore(&["--json", "gcd", "--side", "right", "D^2", "D"]);
    let gcd: Value = serde_json::from_str(gcd.trim()).unwrap_or(Value::Null);
    let r = &gcd["result"];
    if r["d"] != "D" || r["u"] != "0" || r["v"] != "1" {
        problems.push(format!("gcd example gave {r}"));
    }
    let (_, deg) = run_ore(&["--json", "ddet-deg", DIAG]);
    let deg: Value = serde_json::from_str(deg.trim()).unwrap_or(Value::Null);
    if deg["result"]["ddet_degree"] != 3 {
        problems.push(format!("ddet-deg example gave {deg}"));
    }
    let mut detail = format!(
        "roundtrip {}/{}; {} command cases",
        roundtrip.passes,
        roundtrip.trials,
        cases.len()
    );
    for p in problems.iter().take(5) {
        detail.push_str("; ");
        detail.push_str(p);
    }
    Verdict {
        passed: roundtrip.passed() && problems.is_empty(),
        detail,
        elapsed: start.elapsed(),
    }
}

fn main() -> ExitCode {
    type Run = Box<dyn Fn() -> Verdict>;
    let criteria: Vec<(&str, u64, Run)> = vec![
        ("euclid/bezout", 60, Box::new(|| from_suites(&[bezout_suite(500, SEED)]))),
        ("lcm", 30, Box::new(|| from_suites(&[lcm_suite(200, SEED)]))),
        ("common-factor roundtrip", 60, Box::new(|| from_suites(&[common_factor_suite(200, SEED)]))),
        ("degree invariant", 120, Box::new(|| from_suites(&[degree_invariant_suite(100, 50, SEED)]))),
        ("intersection witness", 120, Box::new(|| from_suites(&[witness_suite(200, 200, SEED)]))),
        ("integration by parts", 60, Box::new(|| from_suites(&[pairing_suite(300, SEED)]))),
        ("isotropy and maximality", 60, Box::new(|| from_suites(&[isotropy_suite(100, SEED)]))),
        ("hermite certification", 120, Box::new(|| from_suites(&[hermite_suite(100, 50, SEED)]))),
        ("kernel checks", 10, Box::new(|| from_suites(&[kernel_suite()]))),
        ("regularization", 120, Box::new(|| from_suites(&[regularize_suite(100, SEED, DEFAULT_BUDGET)]))),
        ("cli contract", 120, Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let v = run();
        let in_time = v.elapsed <= Duration::from_secs(*budget);
        let ok = v.passed && in_time;
        failed += usize::from(!ok);
        println!(
            "{} criterion {:>2} {name}: {} [{:.1}s of {budget}s{}]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            v.elapsed.as_secs_f64(),
            if in_time { "" } else { ", over budget" },
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
