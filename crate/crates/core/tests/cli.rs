use fermat::cli::{run, EXIT_INVALID, EXIT_NUMERIC, EXIT_OK};
use fermat::presentation::{from_json, main_presentation};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fermat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(call(&["present", "--n", "0"]).0, EXIT_INVALID);
    assert_eq!(call(&["present", "--n", "2", "--group", "nope"]).0, EXIT_INVALID);
    assert_eq!(call(&["present", "--n", "2", "--format", "pdf"]).0, EXIT_INVALID);
    assert_eq!(call(&["verify", "--n", "2", "--loop", "gamma9"]).0, EXIT_INVALID);
    assert_eq!(call(&["verify", "--n", "2", "--epsilon", "0.3"]).0, EXIT_INVALID);
    assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check-consistency"));
}

#[test]
fn starved_tracker_exits_3() {
    let (code, _, err) = call(&["verify", "--n", "2", "--loop", "1", "--steps", "100"]);
    assert_eq!(code, EXIT_NUMERIC);
    assert!(!err.is_empty());
}

#[test]
fn json_export_round_trips() {
    let (code, out, _) = call(&["present", "--n", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(from_json(&out).unwrap(), main_presentation(3).unwrap());
}

#[test]
fn gap_export_is_deterministic() {
    let a = call(&["present", "--n", "3", "--format", "gap"]);
    let b = call(&["present", "--n", "3", "--format", "gap"]);
    assert_eq!(a, b);
    assert!(a.1.contains("FreeGroup"));
}

#[test]
fn report_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("arr.json");
    let (code, out, _) = call(&["arrangement", "--n", "3", "--report", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["lines"].as_array().unwrap().len(), 9);
}

#[test]
fn arrangement_schema() {
    let v = json(&["arrangement", "--n", "4"]);
    assert_eq!(v["pair_count"], 66);
    assert_eq!(v["expected_pair_count"], 66);
    assert_eq!(v["multiplicity_counts"]["3"], 16);
    assert!(v["multiplicity_counts"].is_object());
}

#[test]
fn invariants_schema() {
    let v = json(&["invariants", "--n", "2", "--homs", "S2,S3"]);
    assert_eq!(v["free_rank"], 6);
    assert_eq!(v["torsion"].as_array().unwrap().len(), 0);
    assert!(v["hom_counts"].is_object());
    assert_eq!(v["rank_check"]["classical_line_complement"], 5);
    assert_eq!(v["rank_check"]["discrepancy"], true);
}

#[test]
fn verify_reports_exact_match_for_gamma1() {
    let v = json(&["verify", "--n", "2", "--loop", "1"]);
    let s = v.to_string();
    assert!(s.contains("\"exact_word_match\":true"), "{s}");
}

#[test]
fn consistency_report_passes() {
    let v = json(&["check-consistency", "--n", "4"]);
    for key in ["expansions", "gamma0_simplification", "semidirect", "definition_vs_main_product_order"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
