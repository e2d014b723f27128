use std::path::PathBuf;
use std::process::Command;

use fqcodes::cli::{report_exit_code, run, GrayReport, LcdReport, ParamsReport, EXIT_IO, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
use fqcodes::lcd::LcdConclusion;
use fqcodes::tables::{table3, verify_entries, Status, VerificationReport, VerifyOptions};

const ROW9: &str = r#"{"q": 3, "alpha": 3, "beta": 3, "s": "1", "l": "2w+2", "g": "1", "h": "x", "k": "x^3+2"}"#;
const EXAMPLE: &str = r#"{"q": 3, "alpha": 4, "beta": 4, "rows": [
    ["1", "1", "1", "0", "w", "w+1", "w+1", "w"],
    ["1", "2", "0", "1", "w+2", "2", "w", "1"],
    ["1", "2", "0", "1", "2", "w", "2", "w"]]}"#;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn call(args: &[&str]) -> fqcodes::cli::Outcome {
    run(std::iter::once("fqcodes").chain(args.iter().copied()))
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let out = call(args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fqcodes")).args(args).output().unwrap()
}

#[test]
fn params_of_a_table_row() {
    let r: ParamsReport = json(&["params", "--def", ROW9, "--format", "json"]);
    assert_eq!((r.dimension, r.formula_exponent, r.actual_exponent), (6, 6, 6));
    assert!(r.spans_ok);
    assert_eq!(r.image_distance.value, Some(3));
    assert_eq!(r.image_distance.mode, "exact");
    assert!(r.conditions_violated.is_empty());
}

#[test]
fn params_of_the_zero_code() {
    let r: ParamsReport = json(&["params", "--def", r#"{"q": 3, "beta": 3, "g": "0", "h": "0", "k": "0"}"#, "--format", "json"]);
    assert_eq!(r.dimension, 0);
    assert_eq!(r.distance.value, None);
    assert_eq!(r.distance.mode, "undefined");
}

#[test]
fn malformed_polynomial_reports_position() {
    let out = call(&["params", "--def", r#"{"q": 3, "beta": 3, "g": "x^+1", "h": "0", "k": "1"}"#]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("position 2"), "{}", out.stderr);
}

#[test]
fn violated_conditions_are_named() {
    let out = call(&["params", "--input", data("non_canonical_15_8_5.json").to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("lies in"), "{}", out.stderr);
    let bad = call(&["params", "--def", r#"{"q": 3, "beta": 4, "g": "x^2+x+1", "h": "0", "k": "1"}"#]);
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stderr.contains("g(x) divides x^4-1"), "{}", bad.stderr);
}

#[test]
fn relaxed_build_lists_conditions() {
    let path = data("non_canonical_15_8_5.json");
    let r: GrayReport = json(&["gray", "--input", path.to_str().unwrap(), "--relaxed", "--format", "json"]);
    assert_eq!((r.n, r.k, r.distance.value), (15, 8, Some(5)));
    assert_eq!(r.conditions_violated.len(), 1);
}

#[test]
fn gray_classification() {
    let r: GrayReport = json(&["gray", "--def", ROW9, "--format", "json"]);
    assert_eq!((r.n, r.k, r.distance.value), (9, 6, Some(3)));
    assert!(r.classification.contains("quasi-cyclic, index 3"), "{}", r.classification);
    assert!(r.sigma_invariant);
    let def = r#"{"q": 3, "alpha": 3, "beta": 4, "s": "x+2", "l": "x+2w", "g": "1", "h": "x", "k": "x^3+2x^2+x+2"}"#;
    let r: GrayReport = json(&["gray", "--def", def, "--format", "json"]);
    assert_eq!((r.n, r.k), (11, 7));
    assert!(r.classification.contains("cyclic"), "{}", r.classification);
    assert!(!r.classification.contains("quasi"), "{}", r.classification);
}

#[test]
fn lcd_certificates() {
    let r: LcdReport = json(&["lcd", "--def", EXAMPLE, "--format", "json"]);
    assert_eq!(r.certificate.conclusion, LcdConclusion::LcdGuaranteed);
    assert_eq!((r.n, r.k, r.distance.value, r.hull_dimension), (12, 3, Some(7), 0));
    let identity = r#"{"q": 3, "alpha": 2, "beta": 1, "rows": [["1", "0", "w"], ["0", "1", "1"]]}"#;
    let r: LcdReport = json(&["lcd", "--def", identity, "--format", "json"]);
    assert_eq!(r.certificate.conclusion, LcdConclusion::Inapplicable);
    assert!(!r.certificate.c_alpha_self_orthogonal);
    let row1 = r#"{"q": 3, "alpha": 4, "beta": 2, "rows": [["1","1","1","0","w","w"], ["1","2","0","1","2","w+1"]]}"#;
    let r: LcdReport = json(&["lcd", "--def", row1, "--format", "json"]);
    assert_eq!((r.n, r.k, r.distance.value), (8, 2, Some(5)));
}

#[test]
fn dual_of_a_definition() {
    let out = call(&["dual", "--def", ROW9]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("cyclic: true"));
    assert!(out.stdout.contains("s(x) = "));
}

#[test]
fn exit_codes_of_the_binary() {
    let ok = binary(&["tables", "--id", "3"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).matches("verified").count(), 10);
    assert_eq!(binary(&["tables", "--id", "9"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(binary(&["params", "--budget", "0", "--def", ROW9]).status.code(), Some(EXIT_USAGE));
    assert_eq!(binary(&["params"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(binary(&["params", "--input", "/nonexistent/def.json"]).status.code(), Some(EXIT_IO));
    let dir = tempfile::tempdir().unwrap();
    let out = binary(&["tables", "--id", "3", "--output", dir.path().join("missing/report.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_IO));
    assert_eq!(binary(&["--help"]).status.code(), Some(EXIT_OK));
}

#[test]
fn mismatch_maps_to_exit_one() {
    let mut entries = table3();
    entries[0].expected.d += 1;
    let report = verify_entries(&entries, &VerifyOptions::default());
    assert_eq!(report.rows[0].status, Status::Mismatch);
    assert_eq!(report_exit_code(&report), EXIT_MISMATCH);
    assert_eq!(report_exit_code(&verify_entries(&table3(), &VerifyOptions::default())), EXIT_OK);
}

#[test]
fn report_json_round_trips() {
    let out = call(&["tables", "--id", "all", "--format", "json"]);
    assert_eq!(out.code, EXIT_OK);
    let report = VerificationReport::from_json(&out.stdout).unwrap();
    assert_eq!(report.to_json() + "\n", out.stdout);
    let p: ParamsReport = json(&["params", "--def", ROW9, "--format", "json"]);
    assert_eq!(serde_json::from_str::<ParamsReport>(&serde_json::to_string(&p).unwrap()).unwrap(), p);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for format in ["text", "json", "csv"] {
        let args = ["tables", "--id", "1", "--seed", "7", "--format", format];
        let (a, b) = (binary(&args), binary(&args));
        assert_eq!(a.status.code(), Some(EXIT_OK));
        assert_eq!(a.stdout, b.stdout, "format {format}");
    }
}

#[test]
fn tables_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table3.csv");
    let out = binary(&["tables", "--id", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("table,row,expected_n,expected_k_or_size,expected_d,computed_n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("3,")).count(), 10);
}
