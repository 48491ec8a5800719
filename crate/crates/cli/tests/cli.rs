use std::path::Path;
use std::process::{Command, Output};

use hlbound::bounds::lower_bound_main;
use hlbound::exponents::Rational;
use hlbound::ExtendedExponent;
use hlbound_cli::app::{run_with, Cli, HEURISTIC_MARKER};
use hlbound_cli::error::{EXIT_DOMAIN, EXIT_INPUT, EXIT_VERIFICATION};
use hlbound_cli::table::{from_json, read_csv, Cell};
use hlbound_cli::verify::Subject;
use clap::Parser;

fn hlbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlbound")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn ok(args: &[&str]) -> String {
    let o = hlbound(args);
    assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn value_line(text: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix("value"))
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or_else(|| panic!("no value line in {text}"))
}

#[test]
fn exponent_command() {
    assert_eq!(ok(&["exponent", "--m", "2", "--p", "4"]), "2 (2.000000)\n");
    assert_eq!(ok(&["exponent", "--m", "3", "--p", "inf"]), "3/2 (1.500000)\n");
    assert_eq!(ok(&["exponent", "--m", "3", "--p", "5"]), "5/2 (2.500000)\n");
    assert_eq!(code(&hlbound(&["exponent", "--m", "2", "--p", "2"])), i32::from(EXIT_DOMAIN));
    assert_eq!(code(&hlbound(&["exponent", "--m", "2", "--p", "four"])), i32::from(EXIT_INPUT));
}

#[test]
fn bound_command() {
    let text = ok(&["bound", "main", "--m", "2", "--p", "4"]);
    assert!(text.contains("1.414214") && text.contains("[certified]"), "{text}");

    let json = ok(&["bound", "upper", "--m", "2", "--p", "4", "--cmult", "1.128379", "--format", "json"]);
    let cells = from_json(&json).unwrap();
    let value = cells[0].report().unwrap().value;
    assert!((value - 3.1915).abs() < 1e-4, "{value}");

    let o = hlbound(&["bound", "thm777", "--m", "2", "--p", "4", "--eps", "1"]);
    assert_eq!(code(&o), i32::from(EXIT_DOMAIN));
    assert!(stderr(&o).contains("denominator vanishes"), "{}", stderr(&o));

    let csv = ok(&["bound", "best", "--m", "6", "--p", "12", "--format", "csv"]);
    let r = read_csv(&csv).unwrap();
    assert_eq!(r[0].report().unwrap(), &lower_bound_main(6, "12".parse().unwrap()).unwrap());
}

#[test]
fn norm_command() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = dir.path().join("p2.json");
    ok(&["witness", "pm", "--m", "2", "--out", p2.to_str().unwrap()]);
    let v = value_line(&ok(&["norm", p2.to_str().unwrap(), "--p", "4", "--seed", "1"]));
    assert!((v - 0.5f64.sqrt()).abs() < 1e-6, "{v}");

    let q2 = dir.path().join("q2.json");
    ok(&["witness", "q2", "--c", "3", "--out", q2.to_str().unwrap()]);
    let text = ok(&["norm", q2.to_str().unwrap(), "--p", "inf"]);
    assert!((value_line(&text) - 13f64.sqrt()).abs() < 1e-6, "{text}");
    assert!(text.contains("status") && text.contains("maximizer"));

    let again = ok(&["norm", q2.to_str().unwrap(), "--p", "inf"]);
    assert_eq!(text, again);

    let empty = write(dir.path(), "empty.json", r#"{"n": 2, "degree": 2, "terms": []}"#);
    assert_eq!(code(&hlbound(&["norm", &empty, "--p", "4"])), i32::from(EXIT_INPUT));
    let broken = write(dir.path(), "broken.json", r#"{"n": 2, "degree": 2, "terms": [{"alpha": [3, 0]"#);
    assert_eq!(code(&hlbound(&["norm", &broken, "--p", "4"])), i32::from(EXIT_INPUT));
    assert_eq!(code(&hlbound(&["norm", "/nonexistent/poly.json", "--p", "4"])), i32::from(EXIT_INPUT));
    assert_eq!(
        code(&hlbound(&["norm", p2.to_str().unwrap(), "--p", "4", "--starts", "0"])),
        i32::from(EXIT_DOMAIN)
    );
}

#[test]
fn table_command() {
    let csv = ok(&["table", "--m", "2..5", "--p", "2m", "--methods", "main", "--format", "csv"]);
    let cells = read_csv(&csv).unwrap();
    assert_eq!(cells.len(), 4);
    let expected = [2f64.sqrt(), 2f64.powf(1.0 / 3.0), 2f64.sqrt(), 2f64.powf(0.4)];
    for (cell, e) in cells.iter().zip(expected) {
        let r = cell.report().unwrap();
        assert!((r.value - e).abs() < 1e-14, "{r:?}");
        assert!(r.certified);
    }

    let json = ok(&["table", "--m", "2..5", "--p", "2m,inf", "--methods", "main,best", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for row in rows {
        let keys: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["certified", "m", "message", "method", "p", "parameters", "status", "value"]);
    }

    let text = ok(&["table", "--m", "2..4", "--p", "2m", "--methods", "thm777"]);
    assert_eq!(text.matches("out-of-domain").count(), 2, "{text}");
    let cells = read_csv(&ok(&["table", "--m", "2..4", "--p", "2m", "--methods", "thm777", "--format", "csv"])).unwrap();
    assert!(matches!(cells[0], Cell::OutOfDomain { m: 2, .. }));
    assert!(cells[2].report().is_some());

    assert_eq!(code(&hlbound(&["table", "--m", "5..2", "--p", "2m"])), i32::from(EXIT_DOMAIN));
    assert_eq!(code(&hlbound(&["table", "--m", "2..5", "--p", "2q"])), i32::from(EXIT_INPUT));
}

#[test]
fn search_command_marks_certification() {
    let text = ok(&["search", "optimize-c", "--m", "4", "--p", "8", "--grid", "64"]);
    assert!(text.contains("CERTIFIED") && !text.contains("NOT CERTIFIED"), "{text}");
    let best = value_line(&text);
    assert!(best < lower_bound_main(4, "8".parse().unwrap()).unwrap().value);

    let dir = tempfile::tempdir().unwrap();
    let start = dir.path().join("start.json");
    ok(&["witness", "pm", "--m", "2", "--out", start.to_str().unwrap()]);
    let args = ["search", "heuristic", "--n", "2", "--m", "2", "--p", "4", "--iterations", "10", "--start"];
    let mut with_start: Vec<&str> = args.to_vec();
    with_start.push(start.to_str().unwrap());
    let text = ok(&with_start);
    assert!(text.contains(HEURISTIC_MARKER), "{text}");
    assert!(value_line(&text) >= 2f64.sqrt() - 1e-6);
    assert_eq!(text, ok(&with_start));

    let json = ok(&["search", "heuristic", "--n", "2", "--m", "2", "--p", "4", "--iterations", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["certified"], false);
    assert_eq!(v["marker"], HEURISTIC_MARKER);
}

#[test]
fn verify_filter_runs_only_the_group() {
    let text = ok(&["verify", "--filter", "norms"]);
    assert!(text.contains("criterion 3 [norms] PASS") && text.contains("criterion 4 [norms] PASS"), "{text}");
    assert!(!text.contains("criterion 1 ") && !text.contains("criterion 8 "));
    assert!(text.contains("2/2 criteria passed"));
    assert_eq!(code(&hlbound(&["verify", "--filter", "nonsense"])), i32::from(EXIT_INPUT));
}

struct WrongExponent;

impl Subject for WrongExponent {
    fn hl_exponent(&self, m: u32, p: ExtendedExponent) -> hlbound::Result<Rational> {
        hlbound::exponents::hl_exponent(m, p).map(|r| r * Rational::new(101, 100))
    }
}

#[test]
fn verify_with_wrong_exponent_fails_naming_the_check() {
    let cli = Cli::try_parse_from(["hlbound", "verify", "--filter", "exponents"]).unwrap();
    let mut out = Vec::new();
    let err = run_with(cli, &WrongExponent, &mut out).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_VERIFICATION);
    assert!(err.to_string().contains("hl_exponent(2, 4)"), "{err}");
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("criterion 2 [exponents] FAIL"), "{text}");
}

#[test]
fn usage_errors_are_input_errors() {
    assert_eq!(code(&hlbound(&["frobnicate"])), i32::from(EXIT_INPUT));
    assert_eq!(code(&hlbound(&["exponent", "--m", "2"])), i32::from(EXIT_INPUT));
    assert_eq!(code(&hlbound(&["--help"])), 0);
}
