use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../knotfloer/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotfloer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(rel: &str) -> String {
    fixtures().join(rel).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn surgery_reports_classical_invariants() {
    let out = run(&["--json", "surgery", &fixture("surgery/Ln/n3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tb"], "14");
    assert_eq!(v["rot"], "19");
    assert_eq!(v["d3"], "-5");
}

#[test]
fn malformed_file_exits_two_with_location() {
    let dir = std::env::temp_dir().join("knotfloer-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"components\": [\n").unwrap();
    let out = run(&["surgery", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("line"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(run(&["surgery", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn hfk_sum_at_total_grading() {
    let out = run(&["--json", "hfk", "sum", "--knots", "T2,7", "T2,9", "--total", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pieces"].as_array().unwrap().len(), 3);
}

#[test]
fn hfk_table_torus_and_complex() {
    let out = run(&["hfk", "table", "--knot", "T2,-5", "--minus"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("tower top"));
    let out = run(&["--json", "hfk", "table", "--knot", &fixture("L1l/l1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["hfk", "table", "--knot", "T2,4"]).status.code(), Some(2));
}

#[test]
fn diagram_subcommands() {
    let out = run(&["--json", "diagram", "analyze", &fixture("L0l/l2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["generators"], 7);
    let out = run(&["--json", "diagram", "invariant", &fixture("L0l/l2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["alexander"], 3);
    assert_eq!(v["cycle"], true);
    assert_eq!(v["class"], "nonzero");
}

#[test]
fn distinguish_composites() {
    let out = run(&[
        "--json",
        "distinguish",
        &fixture("composite/L1.json"),
        &fixture("composite/L2.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "distinct");
    assert_eq!(v["classical_equal"], true);
}

#[test]
fn fixtures_check_passes_embedded_and_on_disk() {
    assert_eq!(run(&["fixtures", "check"]).status.code(), Some(0));
    let dir = fixtures();
    let out = run(&["fixtures", "check", "--dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_fixture_dir_fails_naming_file() {
    let dir = std::env::temp_dir().join("knotfloer-cli-corrupt");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(dir.join("surgery/Ln")).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("manifest.json")).unwrap()).unwrap();
    let entry = manifest["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["file"] == "surgery/Ln/n1.json")
        .unwrap()
        .clone();
    std::fs::write(
        dir.join("manifest.json"),
        serde_json::json!({"fixtures": [entry]}).to_string(),
    )
    .unwrap();
    std::fs::write(dir.join("surgery/Ln/n1.json"), "{ not json").unwrap();
    let out = run(&["fixtures", "check", "--dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("surgery/Ln/n1.json"));
}
