//! End-to-end checks of the `gfe1313` binary: the documented invocations,
//! the exit-code contract, report contents, and the external-data fallback.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gfe1313"));
    // Isolate each invocation from the ambient environment.
    c.env_remove("GFE_FREY_DATA");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn shipped_data_file() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/frey_curves.json")
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gfe1313-{name}-{}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn sieve_case_one_at_five_matches_the_reference_outcome() {
    let out = run(&["sieve", "--p", "5", "--case", "I", "--expect-paper"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["p"], 5);
    assert_eq!(v["case"], "I");
    assert_eq!(v["candidateCount"], 62);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 2);
}

#[test]
fn sieve_case_two_at_seventeen_has_the_extra_class() {
    let out = run(&["sieve", "--p", "17", "--case", "II", "--expect-paper"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 2);
}

#[test]
fn sieving_both_cases_yields_an_array_report() {
    let out = run(&["sieve", "--p", "5", "--case", "both", "--expect-paper"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    let both = v.as_array().expect("array of two case reports");
    assert_eq!(both.len(), 2);
    assert_eq!(both[0]["case"], "I");
    assert_eq!(both[1]["case"], "II");
    assert_eq!(both[1]["survivors"].as_array().unwrap().len(), 1);
}

#[test]
fn the_excluded_exponent_is_a_usage_error() {
    let out = run(&["sieve", "--p", "13"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("13"));
}

#[test]
fn modular_sieve_without_data_lists_pairs_and_skips() {
    let out = run(&["modular-sieve", "--p", "5", "--q", "19"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "SKIPPED_NO_FREY_DATA");
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 9);
    assert_eq!(pairs[0][0], 1);
    assert_eq!(pairs[0][1], 18);
    assert_eq!(pairs[8][0], 9);
    assert_eq!(pairs[8][1], 10);
}

#[test]
fn modular_sieve_defaults_the_auxiliary_prime_from_the_table() {
    let out = run(&["modular-sieve", "--p", "29"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["q"], 233);
    let out = run(&["modular-sieve", "--p", "53", "--q", "19"]);
    assert_eq!(code(&out), 2, "53 is not an admissible exponent");
}

#[test]
fn the_shipped_data_file_parses_but_carries_no_curves() {
    let path = shipped_data_file();
    let out = run(&[
        "modular-sieve",
        "--p",
        "5",
        "--q",
        "19",
        "--frey-data",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "SKIPPED_NO_FREY_DATA");
    assert!(v["skipReason"].as_str().unwrap().contains("absent"));
}

#[test]
fn the_environment_variable_is_the_fallback_data_source() {
    let out = bin()
        .args(["modular-sieve", "--p", "5", "--q", "19"])
        .env("GFE_FREY_DATA", shipped_data_file())
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let v = stdout_json(&out);
    // The reason distinguishes a read file without curves from no file at
    // all, so this proves the variable was honored.
    assert!(v["skipReason"].as_str().unwrap().contains("absent"));
}

#[test]
fn an_unreadable_data_file_exits_with_the_missing_data_code() {
    let out = run(&[
        "modular-sieve",
        "--p",
        "5",
        "--q",
        "19",
        "--frey-data",
        "/nonexistent/frey.json",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn supplied_curve_data_drives_the_elimination_exit_code() {
    let data = |residues: &str| {
        format!(
            r#"{{
  "baseField": "Q(sqrt13)",
  "curves": {{
    "a4": [{{"coeff": "1,0"}}],
    "a6": [{{"coeff": "1,0"}}]
  }},
  "targets": [{{"q": 19, "residues": [{residues}]}}]
}}"#
        )
    };
    // No admissible residues: every trace misses, so elimination succeeds.
    let path = temp_file("eliminated", &data(""));
    let out = run(&[
        "modular-sieve",
        "--p",
        "5",
        "--q",
        "19",
        "--frey-data",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout_json(&out)["status"], "ELIMINATED");
    // Every residue admissible: every pair survives.
    let path = temp_file("unresolved", &data("0, 1, 2, 3, 4"));
    let out = run(&[
        "modular-sieve",
        "--p",
        "5",
        "--q",
        "19",
        "--frey-data",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "UNRESOLVED");
    assert_eq!(v["traces"].as_array().unwrap().len(), 9);
    assert_eq!(v["unresolvedPairs"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_point_accepts_the_documented_coordinates() {
    let out = run(&[
        "verify-point",
        "--p",
        "5",
        "--x",
        "-4,4,0",
        "--y",
        "96,-288,176",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["p"], 5);
    assert_eq!(v["kind"], "C_INT");
    assert_eq!(v["onCurve"], true);
    assert_eq!(v["verdict"]["verdict"], "NO_INTEGER_SOLUTION");
}

#[test]
fn verify_point_handles_infinity_and_off_curve_points() {
    let out = run(&["verify-point", "--p", "5", "--point", "INF"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["verdict"], "TRIVIAL_SOLUTION");
    assert_eq!(v["verdict"]["roots"][0][0], "-1");
    assert_eq!(v["verdict"]["roots"][0][1], "1");

    let out = run(&["verify-point", "--p", "5", "--point", "1,0,0;1,0,0"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["onCurve"], false);
    assert!(v.get("verdict").is_none());
}

#[test]
fn curves_at_seven_report_three_catalogued_points() {
    let out = run(&["curves", "--p", "7", "--known-points", "--expect-paper"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    let models = v.as_array().unwrap();
    let kinds: Vec<&str> = models.iter().map(|m| m["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["C_PRIME", "C_INT", "D_PRIME"]);
    for m in models {
        assert_eq!(m["genus"], 3);
    }
    let integral = &models[1];
    let points = integral["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    assert!(points.iter().all(|p| p["onCurve"] == true));
    assert!(points
        .iter()
        .any(|p| p["verdict"]["verdict"] == "TRIVIAL_SOLUTION"));
}

#[test]
fn search_emits_csv_rows_and_finds_only_trivial_solutions() {
    let out = run(&["search", "--bound", "3", "--n", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,c,n,primitive"));
    assert!(text.contains("1,0,1,3,true"));

    let out = run(&["search", "--bound", "50", "--n", "5", "--expect-paper"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["bound"], 50);
    assert_eq!(v["exponents"], serde_json::json!([5]));
    for sol in v["solutions"].as_array().unwrap() {
        let a = sol["a"].as_i64().unwrap();
        let b = sol["b"].as_i64().unwrap();
        assert!(a == 0 || b == 0 || a == -b, "non-trivial: {sol}");
    }
}

#[test]
fn the_out_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("gfe1313-out-{}.json", std::process::id()));
    let out = run(&[
        "sieve",
        "--p",
        "5",
        "--case",
        "I",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["candidateCount"], 62);
    std::fs::remove_file(&path).ok();
}

#[test]
fn human_format_mirrors_the_survivor_summary() {
    let out = run(&[
        "sieve",
        "--p",
        "5",
        "--case",
        "I",
        "--format",
        "human",
        "--threads",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("case I at p = 5"));
    assert!(text.contains("62 candidate pairs"));
    assert!(text.contains("2 surviving classes"));
    assert!(text.contains("zeta-coordinates"));
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(code(&run(&["--help"])), 0);
    let out = run(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("gfe1313"));
}
