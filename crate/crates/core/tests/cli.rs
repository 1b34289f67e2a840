//! End-to-end tests of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subgroup-sums"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn count_prints_the_count() {
    let out = run(&["count", "--m", "2", "--n", "2", "--variant", "s"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5");

    let out = run(&["count", "--m", "4", "--n", "6", "--variant", "c", "--formula", "c4"]);
    assert_eq!(stdout(&out).trim(), "12");
}

#[test]
fn count_accepts_scientific_notation() {
    let out = run(&["count", "--m", "1e2", "--n", "1e2", "--variant", "s"]);
    assert_eq!(out.status.code(), Some(0));
    let via_plain = run(&["count", "--m", "100", "--n", "100", "--variant", "s"]);
    assert_eq!(stdout(&out), stdout(&via_plain));
}

#[test]
fn count_rejects_mismatched_formula() {
    let out = run(&["count", "--m", "4", "--n", "6", "--variant", "s", "--formula", "c1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn oracle_prints_both_counts() {
    let out = run(&["oracle", "--m", "4", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "16 12");
}

#[test]
fn oracle_cap_is_a_computation_error() {
    let out = run(&["oracle", "--m", "200", "--n", "200"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["oracle", "--m", "200", "--n", "200", "--cap", "40000"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn summatory_prints_value_and_elapsed() {
    let out = run(&["summatory", "--variant", "s", "--x", "4", "--algo", "naive"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut fields = text.split_whitespace();
    assert_eq!(fields.next(), Some("20"));
    let elapsed: f64 = fields.next().unwrap().parse().unwrap();
    assert!(elapsed >= 0.0);
}

#[test]
fn summatory_domain_error_exits_1() {
    let out = run(&["summatory", "--variant", "s", "--x", "0.5", "--algo", "naive"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("domain error"), "stderr: {err}");
}

#[test]
fn summatory_naive_cap_exits_2() {
    let out = run(&["summatory", "--variant", "s", "--x", "2e6", "--algo", "naive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exits_1() {
    let out = run(&["summatory", "--variant", "q", "--x", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("scan"));
}

#[test]
fn series_check_reports_gap() {
    let out = run(&["series-check", "--variant", "s", "--z", "2", "--w", "2", "--trunc", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("partial=") && text.contains("closed=") && text.contains("gap="));
    let out = run(&["series-check", "--variant", "s", "--z", "1", "--w", "2", "--trunc", "100"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn coeffs_routes_agree_and_print_highest_first() {
    let series = run(&["coeffs", "--variant", "s", "--weight-order", "2", "--route", "series",
        "--precision", "30"]);
    assert_eq!(series.status.code(), Some(0));
    let text = stdout(&series);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 5);
    // highest degree first: B_4 = 1/(8 pi^2) = 0.01266...
    assert!(lines[0].starts_with("0.0126651479552922214"), "got {}", lines[0]);
    // B_0 is the only negative coefficient of this table
    assert!(lines[4].starts_with("-0.018646413472038"), "got {}", lines[4]);

    let closed = run(&["coeffs", "--variant", "s", "--weight-order", "2", "--route",
        "closedform", "--precision", "30"]);
    assert_eq!(stdout(&closed), text, "closed-form route must print the same digits");

    let c1 = run(&["coeffs", "--variant", "c", "--weight-order", "1", "--route", "series",
        "--precision", "30"]);
    let ctext = stdout(&c1);
    assert!(ctext.trim().lines().next().unwrap().starts_with("0.00769948669101325139"));
}

#[test]
fn coeffs_invalid_route_combination_exits_1() {
    let out = run(&["coeffs", "--variant", "c", "--weight-order", "2", "--route", "gderiv"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["coeffs", "--variant", "s", "--weight-order", "3", "--route", "series"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn constants_prints_the_bank() {
    let out = run(&["constants", "--precision", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("gamma_0        = 0.57721566490153286061"), "{text}");
    assert!(text.contains("zeta'(2)       = -0.93754825431584375370"), "{text}");
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn scan_writes_deterministic_csv() {
    let dir = std::env::temp_dir().join(format!("sgs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "scan", "--variant", "s", "--from", "1e3", "--to", "1e4",
            "--points-per-decade", "4", "--precision", "30",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    let ca = std::fs::read(&a).unwrap();
    let cb = std::fs::read(&b).unwrap();
    assert_eq!(ca, cb, "scan output must be byte-identical across runs");
    let text = String::from_utf8(ca).unwrap();
    assert!(text.starts_with("x,exact,main_term,delta,normalized_delta,relative_error\n"));
    assert_eq!(text.trim().lines().count(), 1 + 5); // header + 5 grid points
    cleanup(&dir);
}

fn cleanup(dir: &Path) {
    let _ = std::fs::remove_dir_all(dir);
}
