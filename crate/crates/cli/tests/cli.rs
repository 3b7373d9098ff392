use std::path::Path;
use std::process::{Command, Output};

fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .env_remove("ATLAS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn build_writes_table_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = atlas(&["build", "is:3", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("order 34"), "{text}");
    assert!(text.contains("zero 33"), "{text}");
    assert!(dir.path().join("is_3.cay").exists());
    assert!(dir.path().join("is_3.labels").exists());

    // the written table round-trips, labels included
    let table = format!("table:{}", dir.path().join("is_3.cay").display());
    let o = atlas(&["analyze", &table]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(&o);
    assert_eq!(report["order"], 34);
    assert_eq!(report["zero_label"], "---");
}

#[test]
fn build_fixture_mat2f2() {
    let dir = tempfile::tempdir().unwrap();
    let o = atlas(&["build", "fixture:mat2f2", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("order 16\n"));
}

#[test]
fn ragged_table_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("foo.cay");
    std::fs::write(&path, "2\n0 0\n0\n").unwrap();
    let o = atlas(&["build", &format!("table:{}", path.display())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("parse error"), "{}", stderr(&o));
}

#[test]
fn unknown_family_is_a_usage_error() {
    let o = atlas(&["analyze", "zz:3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn analyze_is3() {
    let o = atlas(&["analyze", "is:3"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["radical_size"], 1);
    assert_eq!(r["minimal_idempotents"], 3);
    assert_eq!(r["m"]["status"], "found");
    assert!(r["m"]["separation"].is_null());
    assert!(r["m"]["interpolation"].is_null());
}

#[test]
fn analyze_d3() {
    let r = json(&atlas(&["analyze", "d:3"]));
    assert_eq!(r["radical_size"], 2);
    let classes = r["m"]["classes"].as_array().unwrap();
    assert!(!classes.is_empty());
    assert!(classes.iter().all(|c| c.as_array().unwrap().len() == 1));
}

#[test]
fn full_transformations_need_a_relative_zero() {
    let o = atlas(&["analyze", "t:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--relative-zero"), "{}", stderr(&o));
    let o = atlas(&["analyze", "t:3", "--relative-zero", "111"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn enumerate_counts() {
    let o = atlas(&["enumerate", "b:3", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = atlas(&["enumerate", "is:3", "--class", "2", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = atlas(&["enumerate", "is:3", "--class", "0", "--count-only"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_without_valid_m() {
    let o = atlas(&["enumerate", "fixture:mat2f2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--oracle"));
    let o = atlas(&["enumerate", "fixture:mat2f2", "--oracle", "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = atlas(&["enumerate", "fixture:mat2f2", "--oracle", "--json"]);
    let listing = json(&o);
    assert_eq!(listing["mode"], "oracle");
    assert_eq!(listing["count"], 3);
}

#[test]
fn enumerate_listing_and_json_file() {
    let o = atlas(&["enumerate", "is:3", "--max-print", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("count 6 (classified)"), "{text}");
    assert!(text.contains("... 4 more"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("is3.json");
    let o = atlas(&["enumerate", "is:3", "--json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let listing: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let subs = listing["subsemigroups"].as_array().unwrap();
    assert_eq!(subs.len(), 6);
    assert!(subs.iter().all(|t| t["class"] == 3 && t["size"] == 5));
    assert_eq!(json(&o)["count"], 6);
}

#[test]
fn budget_override_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(["enumerate", "fixture:mat2f2", "--oracle"])
        .env("ATLAS_BUDGET", "universe=2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(["analyze", "is:3"])
        .env("ATLAS_BUDGET", "bogus")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_verify_matches() {
    for spec in ["is:3", "b:2", "d:3", "pt:2"] {
        let o = atlas(&["oracle-verify", spec]);
        assert!(o.status.success(), "{spec}: {}", stderr(&o));
        assert!(stdout(&o).ends_with("match\n"), "{spec}");
    }
}

#[test]
fn dot_export_is_deterministic() {
    let a = atlas(&["export", "is:2", "--dot"]);
    let b = atlas(&["export", "is:2", "--dot"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.matches("subgraph cluster_").count(), 3);
}

#[test]
fn dot_export_of_trivial_semigroup() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.cay");
    std::fs::write(&path, "1\n0\n").unwrap();
    let o = atlas(&["export", &format!("table:{}", path.display()), "--dot"]);
    assert_eq!(stdout(&o).matches("subgraph cluster_").count(), 1);
}

fn write_rees(dir: &Path, body: &str) -> String {
    let path = dir.join("p.rees");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn rees_normal_form_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_rees(dir.path(), "rees\n3 3\n1\n0\n1 0 0\n0 1 1\n1 0 0\n");
    let o = atlas(&["rees", "normal-form", &file, "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = json(&o);
    let w = &r["witnesses"][0];
    assert_eq!(w["k"], 2);
    assert_eq!(w["t_size"], 1 + w["zeros"].as_u64().unwrap());

    // Brandt semigroup over a group of order 2: |T| = 1 + 1*2
    let file = write_rees(dir.path(), "rees\n2 2\n2\n0 1\n1 0\n1 0\n0 1\n");
    let r = json(&atlas(&["rees", "normal-form", &file, "--json"]));
    assert_eq!(r["witnesses"][0]["k"], 2);
    assert_eq!(r["witnesses"][0]["t_size"], 3);
}
