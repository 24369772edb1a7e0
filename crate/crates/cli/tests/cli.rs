use std::path::Path;
use std::process::{Command, Output};

fn filiform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filiform"))
        .args(args)
        .env("FILIFORM_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_output(dir: &Path, name: &str, args: &[&str]) -> String {
    let o = filiform(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn region_lists_smallest_empty_triple() {
    let o = filiform(&["region", "--n", "10", "--empty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(4,6,10)\ncount: 1\n");
    let o = filiform(&["--json", "region", "--n", "12", "--empty"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 4);
}

#[test]
fn generate_smallest_triple_has_one_parameter() {
    let o = filiform(&["generate", "general", "--z1", "4", "--z2", "4", "--n", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["parameters"], serde_json::json!(["a_1"]));
}

#[test]
fn paper15_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_output(dir.path(), "p15.json", &["paper15", "--beta33", "1/858"]);
    let o = filiform(&["--json", "analyze", &file]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["derived_length"], 4);
    assert_eq!(v["z1"], 4);
    assert_eq!(v["z2"], 9);
    assert_eq!(v["ds_dims"], serde_json::json!([15, 13, 9, 1, 0]));
}

#[test]
fn zero_parameters_give_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("zero.json");
    std::fs::write(&params, "{}").unwrap();
    for (z1, z2, n) in [(4, 4, 5), (4, 5, 8), (5, 6, 9), (4, 6, 10), (6, 7, 12)] {
        let (z1, z2, n) = (z1.to_string(), z2.to_string(), n.to_string());
        let file = write_output(
            dir.path(),
            "g.json",
            &["generate", "general", "--z1", &z1, "--z2", &z2, "--n", &n, "--params", params.to_str().unwrap()],
        );
        let v: serde_json::Value = serde_json::from_str(&stdout(&filiform(&["--json", "analyze", &file]))).unwrap();
        assert_eq!(v["model"], true);
    }
}

#[test]
fn symbolic_analyze_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_output(dir.path(), "g.json", &["generate", "general", "--z1", "4", "--z2", "4", "--n", "5"]);
    assert_eq!(filiform(&["analyze", &file]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(filiform(&["bogus"]).status.code(), Some(1));
    assert_eq!(filiform(&["region"]).status.code(), Some(1));
    assert_eq!(filiform(&["analyze", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(filiform(&["certify", "--z1", "4", "--z2", "5", "--n", "8"]).status.code(), Some(2));
    assert_eq!(filiform(&["certify", "--z1", "4", "--z2", "3", "--n", "8"]).status.code(), Some(2));
    assert_eq!(filiform(&["--help"]).status.code(), Some(0));
}

#[test]
fn certify_smallest_region_triple() {
    let o = filiform(&["--json", "certify", "--z1", "4", "--z2", "6", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conclusion"], true);
    assert_eq!(v["relation_lhs"], "392");
    assert_eq!(v["relation_rhs"], "-7575");
}

#[test]
fn lemma_check_reports_mismatches() {
    let o = filiform(&["lemma-check", "--z1", "4", "--z2", "6", "--n", "10", "--m", "0", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = filiform(&["lemma-check", "--z1", "4", "--z2", "6", "--n", "10", "--m", "1", "--k", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAILS"));
}

#[test]
fn search_is_byte_identical() {
    let args = ["--json", "search", "--z1", "4", "--z2", "5", "--n", "7", "--grid", "-1,0,1/2", "--budget", "100", "--seed", "5"];
    let a = filiform(&args);
    let b = filiform(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["mode"], "sampled");
    assert_eq!(v["candidates_tested"], 100);
}

#[test]
fn bratzlavsky_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let raw = write_output(dir.path(), "raw.json", &["generate", "bratzlavsky", "--n", "7", "--lambda=-1,2,3"]);
    let o = filiform(&["--json", "adapted", &raw]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["adapted"], false);
    let relabeled =
        write_output(dir.path(), "adapted.json", &["generate", "bratzlavsky", "--n", "7", "--lambda=-1,2,3", "--relabel"]);
    assert_eq!(stdout(&filiform(&["adapted", &relabeled])), "basis is adapted\n");
    let sym = write_output(dir.path(), "sym.json", &["generate", "bratzlavsky", "--n", "7"]);
    assert_eq!(stdout(&filiform(&["constraints", &sym])), "0 constraints\n");
}

#[test]
fn rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dim": 2, "brackets": [], "extra": true}"#).unwrap();
    assert_eq!(filiform(&["analyze", path.to_str().unwrap()]).status.code(), Some(1));
}
