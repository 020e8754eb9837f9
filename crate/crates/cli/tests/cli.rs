mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{q, random_rational};
use paraclass_cli::generate::generate;
use paraclass_cli::modelfile::model_file_text;
use paraclass_cli::{parse_model_str, run_any, AnyModel, Sections};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paraclass"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn classify_json(path: &str) -> Value {
    let out = run(&["classify", path, "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn heisenberg_matches_golden_file() {
    let out = run(&["generate", "Heisenberg"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read(corpus("heisenberg.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn bundled_corpus_validates() {
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let p = entry.unwrap().path();
        let out = run(&["validate", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", p.display());
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> (&'static str, Vec<String>, i8) {
    let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
    match rng.gen_range(0..4) {
        0 => ("KGreater", vec![random_rational(rng).to_string()], eps),
        1 => {
            let mut l = random_rational(rng);
            while l == q(0, 1) {
                l = random_rational(rng);
            }
            ("KLess", vec![l.to_string()], eps)
        }
        2 => ("Heisenberg", vec![], 1),
        _ => (
            "General",
            (0..3).map(|_| random_rational(rng).to_string()).collect(),
            1,
        ),
    }
}

#[test]
fn generate_parse_run_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (family, params, eps) = random_params(&mut rng);
        let model = generate(family, &params, eps, false).unwrap();
        let text = model_file_text(&model.to_json());
        let parsed = parse_model_str(&text).unwrap();
        assert_eq!(parsed, model);
        let direct = run_any(model, Sections::CLASSIFY).unwrap();
        let via_file = run_any(parsed, Sections::CLASSIFY).unwrap();
        assert_eq!(direct, via_file);
    }
}

#[test]
fn generated_k_greater_three_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "KGreater", "3"]);
    let path = write(
        dir.path(),
        "kg3.json",
        &String::from_utf8(out.stdout).unwrap(),
    );
    let report = classify_json(&path);
    assert_eq!(report["classification"]["verdict"], "ConstantCurvatures");
    assert_eq!(report["classification"]["k"], 8);
}

#[test]
fn generated_nilpotent_candidate() {
    let out = run(&["generate", "General", "0", "2", "1"]);
    let model = parse_model_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let AnyModel::Exact(m) = model else {
        panic!("exact mode expected")
    };
    let h = paraclass_core::paracontact::compute_h(&m);
    assert!(!h.is_zero());
    assert!(h.square().is_zero());
}

#[test]
fn fractions_stay_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "KLess", "1/3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"1/3\""));
    let path = write(dir.path(), "kl.json", &text);
    let report = classify_json(&path);
    // k = −(λ² + 1)
    assert_eq!(report["classification"]["k"], "-10/9");
    assert_eq!(report["classification"]["eigen"]["lambda"], "1/3");
}

#[test]
fn decimals_rejected_in_exact_mode() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("heisenberg.json")).unwrap();
    let path = write(dir.path(), "bad.json", &text.replacen("-2", "-2.0", 1));
    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("brackets.2,3[0]"), "{err}");
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn float_files_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "KGreater", "0.5", "--float"]);
    let path = write(
        dir.path(),
        "f.json",
        &String::from_utf8(out.stdout).unwrap(),
    );
    let report = classify_json(&path);
    assert_eq!(report["model"]["mode"], "float");
    assert_eq!(report["classification"]["verdict"], "ConstantCurvatures");
    let k = report["classification"]["k"].as_f64().unwrap();
    assert!((k + 0.75).abs() < 1e-12);
}

#[test]
fn k_equal_one_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "General", "-1/2", "5/2", "1/2"]);
    let path = write(
        dir.path(),
        "k1.json",
        &String::from_utf8(out.stdout).unwrap(),
    );
    let report = classify_json(&path);
    assert_eq!(report["classification"]["k"], 1);
    assert_eq!(report["classification"]["flags"][0], "k-equals-one");
}

#[test]
fn bad_signature_exits_with_axiom_code() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("heisenberg.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["metric"][2][2] = Value::from(1);
    let path = write(dir.path(), "sig.json", &v.to_string());
    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("signature must be (+,+,−)"));
}

#[test]
fn failing_axiom_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("heisenberg.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["phi"][1][1] = Value::from("1/7");
    let path = write(dir.path(), "phi.json", &v.to_string());
    let out = run(&["classify", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        report["validation"]["axioms"]["associated-metric"]["pass"],
        false
    );
    assert!(report.get("classification").is_none());
}

#[test]
fn non_lie_brackets_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("heisenberg.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["brackets"]["1,2"] = serde_json::json!([0, 1, 0]);
    v["brackets"]["2,3"] = serde_json::json!([1, 0, 0]);
    let path = write(dir.path(), "jac.json", &v.to_string());
    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_and_usage_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(run(&["validate", &path]).status.code(), Some(3));
    assert_eq!(
        run(&["validate", "/nonexistent/model.json"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["generate", "Sphere"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "KLess", "0"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "General", "1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["classify-all", "corpus", "--jobs", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn identities_report_marks_para_sasakian() {
    let out = run(&[
        "identities",
        corpus("heisenberg.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["identities"]["para-sasakian"]["pass"], true);
}

#[test]
fn verbose_report_is_deterministic() {
    let path = corpus("k_less_2.json");
    let args = ["classify", path.to_str().unwrap(), "--verbose"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("R(e2,e3):"));
    assert!(text.contains("nabla_e1:"));
}

#[test]
fn batch_mode_reports_per_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("heisenberg.json"), dir.path().join("a.json")).unwrap();
    write(dir.path(), "b.json", "[]");
    let out = run(&[
        "classify-all",
        dir.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["verdict"], "TrH2Zero");
    assert_eq!(rows[1]["status"], 3);
}

#[test]
fn negative_fraction_parameters_and_trailing_flags() {
    let out = run(&["generate", "KLess", "-1/2", "--eps", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let model = parse_model_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(model.name(), "KLess(lambda=-1/2,eps=-1)");
}
