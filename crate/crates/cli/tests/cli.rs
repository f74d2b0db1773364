use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammawald")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn validate_c2_is_clean() {
    let out = run(&["validate", &fixture("c2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("outcome: clean"));
}

#[test]
fn dangling_name_exits_two_and_names_the_field() {
    let out = run(&["validate", &fixture("bad_dangling.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("compose[0].result") && err.contains("'t2'"), "{err}");
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"objects\": [\"a\",\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn unknown_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.json");
    std::fs::write(&path, r#"{"objects": ["a"], "unit": "a", "morphism": []}"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("morphism"));
}

#[test]
fn axioms_on_c2_exit_zero_with_counts() {
    let v = json(&["axioms", "--max-len", "2", "--format", "json", &fixture("c2.json")]);
    assert_eq!(v["outcome"], "clean");
    let counts = v["counts"].as_object().unwrap();
    assert!(counts.keys().all(|k| k.starts_with("axioms.")));
    assert!(counts.values().map(|c| c["passed"].as_u64().unwrap()).sum::<u64>() > 0);
    assert!(v["findings"].as_array().unwrap().is_empty());
}

#[test]
fn report_schema_carries_input_digest_and_parameters() {
    let v = json(&["validate", "--format", "json", "--seed", "7", &fixture("c2.json")]);
    assert_eq!(v["command"], "validate");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["parameters"]["seed"], 7);
    assert_eq!(v["parameters"]["max_len"], 2);
}

#[test]
fn laws_report_findings_with_exit_one() {
    let out = run(&["laws", "--format", "json", &fixture("c2.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counts"]["composition.associativity"]["failed"], 0);
    assert_eq!(v["counts"]["composition.identity"]["failed"], 0);
    assert_eq!(v["counts"]["composition.overlap_symmetry"]["failed"], 1);
}

#[test]
fn k0_values_for_the_corpus() {
    for (file, expected) in [("c2.json", "ℤ/2"), ("x1.json", "0"), ("z3.json", "ℤ/3")] {
        let v = json(&["k0", "--format", "json", &fixture(file)]);
        assert_eq!(v["outcome"], "clean", "{file}");
        assert_eq!(v["results"]["segal"]["display"], expected);
        assert_eq!(v["results"]["waldhausen"]["L2"]["display"], expected);
    }
}

#[test]
fn waldhausen_file_routes_to_its_own_structure() {
    let v = json(&["k0", "--format", "json", &fixture("pointed_sets.json")]);
    assert_eq!(v["outcome"], "clean");
    assert_eq!(v["results"]["waldhausen"]["display"], "ℤ");
    let out = run(&["split", &fixture("pointed_sets.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_input_is_accepted() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_gammawald"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read(fixture("z3.json")).unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(0));
}

#[test]
fn emitted_plus_matches_fixture() {
    let out = run(&["emit-plus", &fixture("x1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(fixture("x1_plus.json")).unwrap());
    let out = run(&["emit-pointed-sets", "--max", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(fixture("pointed_sets.json")).unwrap());
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = ["report-all", "--format", "json", "--budget", "2000", "--seed", "3", &fixture("x1.json")];
    let a = run(&args);
    let b = run(&args);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}
