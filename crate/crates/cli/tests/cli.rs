use std::path::Path;
use std::process::{Command, Output};

fn rankfilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankfilt"))
        .args(args)
        .env_remove("RANKFILT_CACHE")
        .env_remove("RANKFILT_CONFIG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn summand_rows() {
    let o = rankfilt(&["summands", "2", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = rankfilt(&["summands", "4", "1", "2", "--max-rank", "2"]);
    assert_eq!(stdout(&o).lines().count(), 5);

    let o = rankfilt(&["summands", "1", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("l > k"));

    let o = rankfilt(&["--json", "summands", "3", "1", "2", "--subquotient", "2", "--positive-only"]);
    assert_eq!(json(&o)["rows"], serde_json::json!([[1, 1]]));

    let o = rankfilt(&["summands", "3", "1", "4", "--latching"]);
    assert!(stdout(&o).is_empty());
}

#[test]
fn poincare_polynomials() {
    let o = rankfilt(&["poincare", "U(3)/[S2wr(1)|x(1)]"]);
    assert_eq!(stdout(&o).trim(), "1 + t^2 + t^4");
    let o = rankfilt(&["poincare", "U(2)/[S2wr(1)]"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = rankfilt(&["poincare", "U(2)/[(1)x(1)]", "--json"]);
    let v = json(&o);
    assert_eq!(v["poincare"], serde_json::json!({"0": 1, "2": 1}));
    let o = rankfilt(&["poincare", "U(3)/[(1,2)]xU(1)", "--engine", "cartan", "--cutoff", "3"]);
    assert_eq!(stdout(&o).trim(), "1 + t^2 + O(t^4)");
    let o = rankfilt(&["--csv", "poincare", "U(2)/U(1)"]);
    assert_eq!(stdout(&o), "degree,betti\n0,1\n3,1\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rankfilt(&["poincare", "U(2)/[(1)x"]).status.code(), Some(2));
    assert_eq!(rankfilt(&["summands", "two", "1", "1"]).status.code(), Some(2));
    assert_eq!(rankfilt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rankfilt(&[]).status.code(), Some(2));
    let o = rankfilt(&["poincare", "U(4)/[(1,2)]xU(2)", "--engine", "molien"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(rankfilt(&["cube", "5"]).status.code(), Some(2));
}

#[test]
fn cube_square() {
    let o = rankfilt(&["cube", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["all_verified"], true);
    assert_eq!(v["signed_sum"], serde_json::json!({}));
    let subsets: Vec<_> = v["vertices"].as_array().unwrap().iter().map(|x| x["subset"].clone()).collect();
    assert_eq!(subsets, vec![serde_json::json!([]), serde_json::json!([2]), serde_json::json!([2, 3]), serde_json::json!([3])]);
    assert_eq!(v["vertices"][1]["poincare"], serde_json::json!({"0": 1, "2": 1, "4": 1}));
}

#[test]
fn generalized_cube() {
    let o = rankfilt(&["cube", "2", "--l", "2", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: verified"));
}

#[test]
fn reports() {
    let o = rankfilt(&["report", "2", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["one_stage"], true);
    assert_eq!(v["pi0"], 1);
    assert_eq!(v["endomorphism"], serde_json::json!({"0": 1, "3": 1}));

    let o = rankfilt(&["report", "1", "2", "--json"]);
    let v = json(&o);
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["pi0"], 0);

    let o = rankfilt(&["report", "2", "1"]);
    assert!(stdout(&o).contains("rational homology: 1 + t^2\n"));

    let o = rankfilt(&["report", "4", "1", "--csv"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "k,l,m,prime_power,verdict,poincare");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("4,1,2,true,rationally trivial"));
}

#[test]
fn ku_series() {
    let o = rankfilt(&["ku-series", "1", "1", "--cutoff", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), "1 + t^2 + t^4 + t^6 + O(t^7)");
}

#[test]
fn json_is_deterministic() {
    let a = rankfilt(&["report", "4", "2", "--json"]);
    let b = rankfilt(&["report", "4", "2", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

fn with_cache(path: &Path, args: &[&str]) -> Output {
    let mut full = vec!["--cache", path.to_str().unwrap()];
    full.extend_from_slice(args);
    rankfilt(&full)
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let args = ["report", "4", "2", "--json"];
    let plain = rankfilt(&args);
    let cold = with_cache(&path, &args);
    let warm = with_cache(&path, &args);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
    assert!(path.exists());

    let audit = with_cache(&path, &["--verify-cache"]);
    assert_eq!(audit.status.code(), Some(0), "{}", stderr(&audit));
    assert!(stderr(&audit).contains("0 mismatches"));
}

#[test]
fn tampered_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    with_cache(&path, &["poincare", "U(3)/[(1)]xU(2)"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    for entry in doc["entries"].as_object_mut().unwrap().values_mut() {
        entry["coefficients"]["2"] = serde_json::json!(7);
    }
    std::fs::write(&path, doc.to_string()).unwrap();
    let audit = with_cache(&path, &["--verify-cache"]);
    assert_eq!(audit.status.code(), Some(4));
    assert!(stderr(&audit).contains("cache mismatch"));
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    std::fs::write(&path, "{ not json").unwrap();
    let o = with_cache(&path, &["poincare", "U(3)/[(1)]xU(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + t^2 + t^4");
    assert!(stderr(&o).contains("warning"));
    let o = with_cache(&path, &["--no-cache", "poincare", "U(2)/U(1)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-cache.json");
    let o = Command::new(env!("CARGO_BIN_EXE_rankfilt"))
        .args(["poincare", "U(2)/U(1)"])
        .env("RANKFILT_CACHE", &path)
        .env_remove("RANKFILT_CONFIG")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(path.exists());
}

#[test]
fn resource_limit_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rankfilt.toml");
    std::fs::write(&config, "max_piece_dim = 1\n").unwrap();
    let o = rankfilt(&["--config", config.to_str().unwrap(), "poincare", "U(4)/[(1,2)]xU(2)"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("degree"));
}

#[test]
fn config_defaults_apply() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("rankfilt.toml");
    std::fs::write(&config, "cutoff = 2\nengine = \"cartan\"\n").unwrap();
    let o = rankfilt(&["--config", config.to_str().unwrap(), "poincare", "U(3)/[(1)]xU(2)"]);
    assert_eq!(stdout(&o).trim(), "1 + t^2 + O(t^3)");
}
