use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(file)
}

fn homlie(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homlie")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out) = homlie(&all);
    (
        code,
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_affine() {
    let (code, r) = json(&["check", path(&data("affine.hls"))]);
    assert_eq!(code, 0);
    assert_eq!(r["axioms"]["hom_jacobi"], "pass");
    assert_eq!(r["axioms"]["multiplicative"], "pass");
    let (_, text) = homlie(&["check", path(&data("affine.hls"))]);
    assert!(text.contains("hom_jacobi: pass"));
}

#[test]
fn check_reports_failing_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.hls");
    std::fs::write(
        &file,
        "[algebra]\nname = \"bad\"\nbasis = \"a, b, c\"\n\n[bracket]\n\"a,b\" = \"c\"\n\"a,c\" = \"a\"\n\"b,c\" = \"a\"\n",
    )
    .unwrap();
    let (code, r) = json(&["check", path(&file)]);
    assert_eq!(code, 1);
    assert_eq!(r["axioms"]["hom_jacobi"], "fail");
    assert!(r["axioms"]["witnesses"]["hom_jacobi"].is_string());
}

#[test]
fn analyze_affine() {
    let (code, r) = json(&["analyze", path(&data("affine.hls"))]);
    assert_eq!(code, 0);
    assert_eq!(r["center"]["dim"], 1);
    assert_eq!(r["center"]["basis"], serde_json::json!(["e3"]));
    assert_eq!(r["simple"], false);
}

#[test]
fn analyze_graded_sl2() {
    let (code, r) = json(&["analyze", path(&data("sl2_graded.hls"))]);
    assert_eq!(code, 0);
    assert_eq!(r["simple"], true);
    assert_eq!(r["grading"]["transitive"], "pass");
    assert_eq!(r["grading"]["consistent"], "fail");
    assert_eq!(r["grading"]["graded_irreducible"]["status"], "irreducible");
    assert_eq!(r["alarms"], serde_json::json!([]));
}

#[test]
fn prolong_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sl2_min.hls");
    let (code, r) = json(&[
        "prolong",
        path(&data("sl2_local.hls")),
        "--max-degree",
        "2",
        "--tensor-cap",
        "4",
        "--output",
        path(&out),
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["dims"], "(-2:0, -1:1, 0:1, 1:1, 2:0)");
    assert_eq!(r["recovery"], "faithful");
    let (code, c) = json(&["check", path(&out)]);
    assert_eq!(code, 0);
    assert_eq!(c["hom_lie_superalgebra"], true);
}

#[test]
fn prolong_rejects_small_window() {
    let (code, r) = json(&[
        "prolong",
        path(&data("sl2_local.hls")),
        "--max-degree",
        "3",
        "--tensor-cap",
        "3",
    ]);
    assert_eq!(code, 1);
    assert!(r["error"]["message"].as_str().unwrap().contains("window"));
}

#[test]
fn extend_form_with_and_without_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.hls");
    std::fs::write(&good, "[form]\n\"e,f\" = \"1\"\n\"h,h\" = \"2\"\n").unwrap();
    let (code, r) = json(&[
        "extend-form",
        path(&data("sl2_graded.hls")),
        "--form",
        path(&good),
        "--max-degree",
        "3",
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["verdict"], "unique");
    assert_eq!(r["form"]["f,e"], "1");
    assert_eq!(r["properties"]["nondegenerate"], "pass");

    let bad = dir.path().join("bad.hls");
    std::fs::write(&bad, "[form]\n\"e,f\" = \"1\"\n").unwrap();
    let (code, r) = json(&[
        "extend-form",
        path(&data("sl2_graded.hls")),
        "--form",
        path(&bad),
        "--max-degree",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["witness"], serde_json::json!({"Triple": [0, 1, 2]}));
}

#[test]
fn quotient_by_ideal_and_non_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.hls");
    let (code, r) = json(&[
        "quotient",
        path(&data("affine.hls")),
        "--ideal",
        "e1",
        "--output",
        path(&out),
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["dim"], 2);
    let (code, c) = json(&["analyze", path(&out)]);
    assert_eq!(code, 0);
    assert_eq!(c["abelian"], true);

    let (code, _) = json(&[
        "quotient",
        path(&data("affine.hls")),
        "--ideal",
        "e2",
        "--output",
        path(&out),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn usage_and_input_errors() {
    let (code, _) = homlie(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["check", "/nonexistent/file.hls"]);
    assert_eq!(code, 2);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("typo.hls");
    std::fs::write(
        &file,
        "[algebra]\nbasis = \"e1, e2\"\n\n[bracket]\n\"e1,e9\" = \"e1\"\n",
    )
    .unwrap();
    let (code, r) = json(&["check", path(&file)]);
    assert_eq!(code, 2);
    assert!(r["error"]["message"].as_str().unwrap().starts_with("line 5"));
}

#[test]
fn json_is_deterministic() {
    let a = homlie(&["analyze", path(&data("osp12_graded.hls")), "--format", "json"]);
    let b = homlie(&["analyze", path(&data("osp12_graded.hls")), "--format", "json"]);
    assert_eq!(a, b);
}
