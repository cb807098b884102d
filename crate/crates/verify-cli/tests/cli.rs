//! End-to-end tests of the runner library and the `verify` binary: exit
//! codes, report determinism, the deliberately-corrupted-table fixture, and
//! the report schema.

use conformal_algebra::{AlgebraElement, Generator};
use std::process::Command;
use verify_cli::{run, Report, RunOptions, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

#[test]
fn exit_zero_when_everything_passes() {
    let results = run(&["eq4.pair".into()], &RunOptions::default()).unwrap();
    assert_eq!(results.len(), 105);
    let report = Report::assemble(results, false);
    assert_eq!(report.exit_code(), 0);
    assert_eq!(report.totals.pass, 105);
}

#[test]
fn corrupted_table_fails_with_rendered_residual() {
    let opts = RunOptions {
        corrupt: Some((
            Generator::P(0),
            Generator::C(0),
            AlgebraElement::generator(Generator::D),
        )),
        ..RunOptions::default()
    };
    let results = run(
        &["eq4.pair".into(), "jacobi".into(), "matrix".into()],
        &opts,
    )
    .unwrap();
    let report = Report::assemble(results, false);
    assert_eq!(report.exit_code(), 1);
    assert!(report.totals.fail + report.totals.error > 0);
    let broken = report
        .checks
        .iter()
        .find(|c| c.id == "eq4.pair.P0.C0")
        .unwrap();
    assert_eq!(broken.status, Status::Fail);
    let text = broken.residual_text.as_deref().unwrap();
    assert!(!text.is_empty() && text != "0", "residual must be rendered");
    assert!(broken.residual_terms > 0);
}

#[test]
fn unknown_identifier_is_a_usage_error() {
    assert!(run(&["eq99.nope".into()], &RunOptions::default()).is_err());
    let out = bin().arg("eq99.nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn no_selection_is_a_usage_error() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_passes_on_a_small_selection() {
    let out = bin()
        .args(["eq4.pair.P0.C0", "eq7.dilatation", "--no-timestamp"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS  eq4.pair.P0.C0"));
    assert!(stdout.contains("totals: 5 pass, 0 fail, 0 error"));
}

#[test]
fn report_bytes_are_deterministic_without_timestamp() {
    let args = [
        "jacobi-degenerate",
        "eq5",
        "prop.confluence",
        "--seed",
        "42",
        "--format",
        "json",
        "--no-timestamp",
    ];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
}

#[test]
fn json_report_schema() {
    let out = bin()
        .args(["eq10", "--format", "json", "--no-timestamp"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["version"].is_string());
    assert_eq!(v["conventions"]["signature"], "(+,-,-,-)");
    assert_eq!(v["conventions"]["epsilon_orientation"], "eps_0123 = +1");
    assert_eq!(v["conventions"]["hbar"], "1");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 18);
    for c in checks {
        assert!(c["id"].is_string());
        assert!(c["paper_ref"].is_string());
        assert_eq!(c["status"], "pass");
        assert_eq!(c["residual_terms"], 0);
        assert!(c["duration_ms"].is_number());
    }
    assert_eq!(v["totals"]["pass"], 18);
    assert_eq!(v["totals"]["fail"], 0);
    assert_eq!(v["totals"]["error"], 0);
}

#[test]
fn list_checks_contains_documented_identifiers_and_stable_count() {
    let out = bin().arg("list-checks").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("eq4.pair.P0.C0"));
    assert!(text.contains("eq7.canonical-commutator"));
    let again = bin().arg("list-checks").output().unwrap();
    assert_eq!(text, String::from_utf8(again.stdout).unwrap());
    // catalog covers at least the pair and triple enumerations
    let total_line = text.lines().last().unwrap().to_string();
    let total: usize = total_line
        .trim_start_matches("total: ")
        .trim_end_matches(" checks")
        .parse()
        .unwrap();
    assert!(total >= 105 + 455 + 100);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("verify-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("config.json");
    std::fs::write(
        &cfg,
        r#"{"seed": 7, "format": "json", "no_timestamp": true}"#,
    )
    .unwrap();
    // config alone: json output
    let out = bin()
        .args(["eq11", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_ok());
    // flag overrides config format
    let out = bin()
        .args([
            "eq11",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "text",
        ])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("conformal verification report"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_file_and_markdown() {
    let dir = std::env::temp_dir().join(format!("verify-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.md");
    let out = bin()
        .args([
            "eq4.weight",
            "--format",
            "markdown",
            "--no-timestamp",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let md = std::fs::read_to_string(&path).unwrap();
    assert!(md.contains("| `eq4.weight.D` | pass |"));
    assert!(md.contains("**totals:** 15 pass, 0 fail, 0 error"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn jacobi_selection_yields_455_entries() {
    let results = run(&["jacobi".into()], &RunOptions::default()).unwrap();
    assert_eq!(results.len(), 455);
    assert!(results.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn parallel_execution_matches_serial() {
    let serial = run(
        &["algebra".into()],
        &RunOptions {
            jobs: 1,
            ..RunOptions::default()
        },
    )
    .unwrap();
    let parallel = run(
        &["algebra".into()],
        &RunOptions {
            jobs: 4,
            ..RunOptions::default()
        },
    )
    .unwrap();
    let ids = |v: &[verify_cli::CheckResult]| -> Vec<(String, Status)> {
        v.iter().map(|c| (c.id.clone(), c.status)).collect()
    };
    assert_eq!(ids(&serial), ids(&parallel));
}
