use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mutants(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mutants")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn example_passes_as_torsion_free_not_free() {
    let out = mutants(&["verify", "--model", "example-3-3", "--coeff", "Q", "--max-degree", "20"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(report["overall"], "pass");
    assert_eq!(report["degree_bound"], 20);
    assert_eq!(check(&report, "classification")["details"]["computed"], "torsion_free_not_free");
    assert_eq!(check(&report, "kernel_generator")["details"]["generator"], "t1y1 + t2y2 + t3y3");
}

#[test]
fn integral_torus_r1_is_free() {
    let out = mutants(&["verify", "--model", "mutant-torus", "--r", "1", "--coeff", "Z"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(check(&report, "classification")["details"]["computed"], "free");
    assert_eq!(check(&report, "integral_torsion_scan")["pass"], true);
}

#[test]
fn two_torus_r8_has_the_maximal_ideal_summand() {
    let out = mutants(&["verify", "--model", "mutant-2torus", "--r", "8", "--coeff", "F2", "--engine", "symbolic"]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(check(&report, "expected")["details"]["decomposition"], "R ⊕ m[7] ⊕ R[16] ⊕ R[9]");
    assert_eq!(check(&report, "explicit_iso")["pass"], true);
}

#[test]
fn two_torus_rejects_other_coefficients() {
    let out = mutants(&["verify", "--model", "mutant-2torus", "--coeff", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("F2 only"));
}

#[test]
fn invalid_flags_exit_with_usage_error() {
    assert_eq!(mutants(&["verify", "--model", "sphere"]).status.code(), Some(2));
    assert_eq!(mutants(&["verify", "--model", "mutant-torus", "--r", "3"]).status.code(), Some(2));
    assert_eq!(mutants(&["verify", "--model", "koszul", "--coeff", "F4"]).status.code(), Some(2));
    assert_eq!(mutants(&["verify"]).status.code(), Some(2));
}

#[test]
fn koszul_text_report() {
    let out = mutants(&["verify", "--model", "koszul", "--n", "4", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("model: koszul-n4-w2-Q  (D = 20)  overall: PASS"));
    assert!(text.contains("exact_except_end_degreewise  PASS"));
}

#[test]
fn poincare_report() {
    let out = mutants(&["report", "--poincare", "Z", "--r", "2", "--variant", "torus", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 + 3q^3 + 3q^4 + q^7\n");
    let json = json_of(&mutants(&["report", "--poincare", "Z", "--r", "4", "--variant", "two-torus"]));
    assert_eq!(json["total"], 32);
    assert_eq!(json["symmetric"], true);
}

#[test]
fn intersection_form_report() {
    let out = mutants(&["report", "--intersection-form", "--r", "2", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("6x6 Gram, 3 hyperbolic blocks\n0 1 0 0 0 0\n1 0 0 0 0 0\n"));
    let json = json_of(&mutants(&["report", "--intersection-form", "--r", "4"]));
    assert_eq!(json["blocks"], 15);
    assert_eq!(json["gram"].as_array().unwrap().len(), 30);
}

#[test]
fn obstruction_report() {
    let out = mutants(&["report", "--obstruction", "example-3-3", "--format", "text"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "dim H^1 = 3 > rk H^odd = 2: not realizable as minimal Hirsch-Brown model\n"
    );
    let torus = json_of(&mutants(&["report", "--obstruction", "mutant-torus", "--r", "4"]));
    assert_eq!(torus["obstructed"], false);
}

#[test]
fn family_report_lists_hilbert_functions_and_betti_tables() {
    let json = json_of(&mutants(&["report", "--model", "example-3-3", "--max-degree", "6"]));
    let total: Vec<i64> = json["total"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(total, [1, 3, 3, 7, 7, 13, 13]);
    assert_eq!(json["hilbert"].as_array().unwrap().len(), 4);
    assert_eq!(json["betti"].as_array().unwrap().len(), 4);
}

#[test]
fn doubling_of_the_maximal_ideal() {
    let out = mutants(&["doubling", &data("max_ideal_3.json")]);
    assert!(out.status.success());
    let report = json_of(&out);
    assert_eq!(check(&report, "hilbert_identity")["pass"], true);
    assert_eq!(check(&report, "coker_summand")["pass"], true);
    assert_eq!(check(&report, "coker_classification")["details"]["coker_b"], "torsion_free_not_free");
}

#[test]
fn doubling_of_free_and_torsion_modules() {
    let free = json_of(&mutants(&["doubling", &data("free.json")]));
    assert_eq!(free["overall"], "pass");
    assert_eq!(check(&free, "coker_classification")["details"]["coker_b"], "free");
    let torsion = json_of(&mutants(&["doubling", &data("quotient_t1_squared.json")]));
    assert_eq!(check(&torsion, "coker_classification")["details"]["coker_b"], "has_torsion");
}

#[test]
fn doubling_rejects_bad_input() {
    let out = mutants(&["doubling", &data("inhomogeneous.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = mutants(&["doubling", &data("max_ideal_3.json"), "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mutants(&["doubling", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));
}

#[test]
fn verify_doubling_model_matches_doubling_command() {
    let a = mutants(&["verify", "--model", "doubling", "--presentation", &data("quotient_t1.json")]);
    let b = mutants(&["doubling", &data("quotient_t1.json")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_are_byte_identical_across_runs_and_widths() {
    let args = ["verify", "--model", "mutant-torus", "--r", "2", "--jobs", "1"];
    let first = mutants(&args);
    assert_eq!(first.stdout, mutants(&args).stdout);
    let wide = Command::new(env!("CARGO_BIN_EXE_mutants"))
        .args(["verify", "--model", "mutant-torus", "--r", "2"])
        .env("MUTANTS_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(first.stdout, wide.stdout);
}

#[test]
fn output_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("mutants-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = mutants(&["verify", "--model", "example-3-3", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["model"], "example-3-3-Q");
    std::fs::remove_dir_all(dir).unwrap();
}
