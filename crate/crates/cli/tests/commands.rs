use std::path::Path;
use std::process::Command;

fn polytile(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polytile"))
        .args(args)
        .env_remove("POLYTILE_BUDGET")
        .env_remove("POLYTILE_CACHE_DIR")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert_eq!(polytile(&full).0, 0);
    path
}

#[test]
fn build_graphs() {
    let (code, out, _) = polytile(&["build", "--family", "G", "--n", "3", "--t", "4"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 21);
    let (code, out, _) = polytile(&["build", "--family", "tiling", "--n", "4", "--t", "4"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["vertices"].as_array().unwrap().len(), 26);
    let (code, _, err) = polytile(&["build", "--family", "cycle", "--k", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("at least 3"));
    assert_eq!(polytile(&["build", "--family", "G", "--n", "3"]).0, 2);
    assert_eq!(polytile(&["frobnicate"]).0, 2);
}

#[test]
fn homology_and_complex() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = build(dir.path(), "c6.json", &["--family", "cycle", "--k", "6"]);
    let hex = build(dir.path(), "hex.json", &["--family", "tiling", "--n", "3", "--t", "1"]);
    let (code, out, _) = polytile(&["homology", &c6]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["betti"]["1"], 2);
    let (code, out2, _) = polytile(&["homology", "--kind", "matching", &hex]);
    assert_eq!(code, 0);
    assert_eq!(out, out2);
    assert_eq!(polytile(&["homology", "--budget", "10", "--kind", "matching", &hex]).0, 3);
    let (code, out, _) = polytile(&["complex", &c6]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["f_vector"], serde_json::json!([6, 9, 2]));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": 3}").unwrap();
    assert_eq!(polytile(&["homology", bad.to_str().unwrap()]).0, 2);
    assert_eq!(polytile(&["homology", "/nonexistent/graph.json"]).0, 2);
}

#[test]
fn predictions() {
    let (code, out, _) = polytile(&["predict", "--n", "4", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["spheres"], serde_json::json!({"4": 2}));
    let (_, out, _) = polytile(&["predict", "--n", "3", "--t", "3"]);
    let v = json(&out);
    assert_eq!(v["spheres"], serde_json::json!({"3": 1, "4": 1}));
    assert_eq!(v["connectivity"], 2);
    let (_, out, _) = polytile(&["predict", "--n", "7", "--t", "0"]);
    assert_eq!(json(&out)["type"], "point");
    assert_eq!(json(&out)["connectivity"], "inf");
    assert_eq!(polytile(&["predict", "--family", "H", "--n", "5", "--t", "1"]).0, 2);
}

#[test]
fn verification() {
    let (code, out, _) = polytile(&["verify", "--n", "3", "--t", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["match"], true);
    assert_eq!(v["computed"]["betti"]["2"], 2);
    let (code, out, _) = polytile(&["verify", "--n", "2", "--t", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["computed"]["betti"]["2"], 1);
    let (code, out, _) = polytile(&["verify", "--n", "3", "--t", "4", "--budget", "100"]);
    assert_eq!(code, 3);
    let v = json(&out);
    assert_eq!(v["budget_exceeded"], true);
    assert_eq!(v["match"], false);
}

#[test]
fn verification_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["verify", "--family", "H", "--n", "3", "--t", "2", "--cache-dir", cache.to_str().unwrap()];
    let (_, cold, _) = polytile(&args);
    let (_, warm, _) = polytile(&args);
    assert_eq!(json(&cold)["cached"], false);
    assert_eq!(json(&warm)["cached"], true);
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    assert!(files[0].to_str().unwrap().starts_with("H-n3-t2-independence-"));
}

#[test]
fn reductions() {
    let dir = tempfile::tempdir().unwrap();
    let c9 = build(dir.path(), "c9.json", &["--family", "cycle", "--k", "9"]);
    let (code, out, _) = polytile(&["reduce", &c9]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["trace"][0]["rule"], "KOZLOV_LEAF");
    assert_eq!(v["type"]["spheres"], serde_json::json!({"2": 2}));

    let g41 = build(dir.path(), "g41.json", &["--family", "G", "--n", "4", "--t", "1"]);
    let (_, out, _) = polytile(&["reduce", &g41]);
    assert_eq!(json(&out)["type"]["spheres"], serde_json::json!({"2": 1}));

    // the Petersen graph admits none of the rules
    let petersen = dir.path().join("petersen.json");
    let vertices: Vec<String> = (0..10).map(|i| format!("{{\"kind\":\"OPAQUE\",\"id\":{i}}}")).collect();
    let edges = "[0,1],[1,2],[2,3],[3,4],[0,4],[0,5],[1,6],[2,7],[3,8],[4,9],[5,7],[7,9],[6,9],[6,8],[5,8]";
    std::fs::write(&petersen, format!("{{\"vertices\":[{}],\"edges\":[{edges}]}}", vertices.join(","))).unwrap();
    let (code, out, _) = polytile(&["reduce", petersen.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "UNRESOLVED_LEAF");
    assert!(v["type"].is_null());
    assert_eq!(polytile(&["reduce", &c9, "--strategy", "FOLD,NOPE"]).0, 2);
}

#[test]
fn tables() {
    let (code, out, _) = polytile(&["table", "--n", "3", "--t", "1..4", "--format", "md"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    let (code, out, _) = polytile(&["table", "--n", "5", "--t", "1..6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains("jmmv_bound"));
    assert!(out.lines().skip(1).all(|l| l.split(',').nth(5).is_some_and(|c| !c.is_empty())));
    let (code, out, _) = polytile(&["table", "--n", "2,4", "--t", "1..2", "--verify"]);
    assert_eq!(code, 0);
    let rows = json(&out);
    assert!(rows.as_array().unwrap().iter().all(|r| r["status"] == "verified"));
    assert_eq!(polytile(&["table", "--n", "3", "--t", "4..1"]).0, 2);
}
