use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use special_quiver::report::report_from_json;

fn squiver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squiver")).args(args).output().expect("squiver runs")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

fn sl6_ad() -> Value {
    json!({
        "ideals": [{"kind": "hermitian", "comp": 2, "n": 3}],
        "radical": [{"kind": "unital", "ideal": 0, "label": "ad"}],
        "unital": true
    })
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("error report is JSON")
}

#[test]
fn dot_for_sl6_ad_has_two_loops() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", &sl6_ad());
    let o = squiver(&["quiver", "--spec", &spec]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph quiver {"));
    assert!(dot.contains("v0 -> v0"));
    assert!(dot.contains("v1 -> v1"));
    assert_eq!(dot.matches(" -> ").count(), 2);
}

#[test]
fn empty_radical_gives_isolated_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        &json!({"ideals": [{"kind": "bilinear", "dim": 6}, {"kind": "field"}], "radical": [], "unital": true}),
    );
    let o = squiver(&["quiver", "--spec", &spec]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=").count(), 3);
    assert!(!dot.contains(" -> "));
}

#[test]
fn json_output_round_trips_and_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        &json!({
            "ideals": [{"kind": "field"}, {"kind": "hermitian", "comp": 1, "n": 3}],
            "radical": [{"kind": "tensor", "a": {"ideal": 0, "label": "L"}, "b": {"ideal": 1, "label": "V"}, "mult": 2}],
            "unital": true
        }),
    );
    let out = dir.path().join("report.json");
    let out = out.to_str().unwrap();
    let o = squiver(&["quiver", "--spec", &spec, "--format", "json", "--out", out]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let first = std::fs::read_to_string(out).unwrap();
    let r = report_from_json(&first).unwrap();
    assert_eq!(r.quiver.arrows.len(), 4);
    assert_eq!(r.central_extension.total, 1);

    let again = squiver(&["quiver", "--spec", &spec, "--format", "json"]);
    assert_eq!(stdout(&again), first);
    for fmt in ["dot", "text"] {
        let a = squiver(&["quiver", "--spec", &spec, "--format", fmt]);
        let b = squiver(&["quiver", "--spec", &spec, "--format", fmt]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn blocks_and_koszul() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        &json!({
            "ideals": [{"kind": "field"}, {"kind": "hermitian", "comp": 2, "n": 3}],
            "radical": [
                {"kind": "tensor", "a": {"ideal": 0, "label": "L"}, "b": {"ideal": 1, "label": "V"}, "mult": 2},
                {"kind": "tensor", "a": {"ideal": 0, "label": "L"}, "b": {"ideal": 1, "label": "V*"}, "mult": 1}
            ],
            "unital": true
        }),
    );
    let o = squiver(&["blocks", "--spec", &spec]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("A2 o S(W+W')"));
    let o = squiver(&["koszul", "--spec", &spec, "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["koszul"], json!(true));
    assert_eq!(v["schemaVersion"], json!(1));
}

#[test]
fn tkk_check_on_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "k.json", &json!({"dim": 1, "products": [[[2]]]}));
    let o = squiver(&["tkk-check", "--spec", &sc]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("lie algebra: sl(2)"));
    assert!(text.contains("minimal: true"));
}

#[test]
fn verify_appendix_passes() {
    let o = squiver(&["verify-appendix", "--max-rank", "6", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], json!(true));
    assert!(v["cases"].as_array().unwrap().len() > 100);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let o = squiver(&["koszul", "--spec", "x.json", "--hom-cap", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], json!("Usage"));

    let o = squiver(&["quiver", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], json!("Input"));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        &json!({"ideals": [{"kind": "field"}], "radical": [{"kind": "unital", "ideal": 0, "label": "V"}], "unital": true}),
    );
    let o = squiver(&["quiver", "--spec", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(error_json(&o)["message"].as_str().unwrap().contains('V'));
}

#[test]
fn non_jordan_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // unital and commutative but not Jordan
    let products = json!([
        [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
        [[0, 2, 0], [0, 0, 2], [0, 2, 0]],
        [[0, 0, 2], [0, 2, 0], [0, 2, 0]]
    ]);
    let sc = write(dir.path(), "bad.json", &json!({"dim": 3, "products": products}));
    let o = squiver(&["tkk-check", "--spec", &sc]);
    assert_eq!(o.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(error_json(&o)["error"], json!("BracketOutOfSpan"));

    let not_unital = write(dir.path(), "nu.json", &json!({"dim": 2, "products": [[[0, 1], [1, 0]], [[1, 0], [0, 0]]]}));
    let o = squiver(&["tkk-check", "--spec", &not_unital]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], json!("NotUnital"));
}

#[test]
fn tight_degree_cap_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        &json!({
            "ideals": [{"kind": "bilinear", "dim": 5}],
            "radical": [{"kind": "unital", "ideal": 0, "label": "L1V", "mult": 3}],
            "unital": true
        }),
    );
    let o = squiver(&["koszul", "--spec", &spec, "--deg-cap", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["error"], json!("NonTerminating"));
}
