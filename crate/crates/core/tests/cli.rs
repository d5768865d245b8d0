use std::process::Command;

use serde_json::Value;

fn hfg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hfg")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = hfg(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn write(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("hfg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn invariants_for_the_example() {
    let v = json(&["invariants", "--m", "2,3,3", "--n", "2,3,4,4"]);
    assert_eq!(v["alpha"], 16);
    assert_eq!(v["alpha_tuple"][0], 21);
    assert_eq!(v["generators"].as_array().unwrap().len(), 7);
    assert_eq!(v["waldschmidt"], "16/1");
    assert_eq!(v["resurgence"], "1/1");
}

#[test]
fn output_is_deterministic() {
    let a = hfg(&["invariants", "--m", "3,2,3", "--n", "4,2,3,4"]);
    let b = hfg(&["invariants", "--m", "2,3,3", "--n", "2,3,4,4"]);
    assert_eq!(a.1, b.1);
}

#[test]
fn generators_of_a_single_point() {
    let v = json(&["generators", "--m", "1", "--n", "1"]);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    assert!(gens.iter().all(|g| g["degree"] == 1));
}

#[test]
fn table_carries_the_json_data() {
    let (code, table, _) = hfg(&["resolution", "--m", "1", "--n", "1", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(table
        .lines()
        .any(|l| l.starts_with("generator_twists") && l.ends_with("1, 1")));
    assert!(table
        .lines()
        .any(|l| l.starts_with("syzygy_twists") && l.ends_with('2')));
}

#[test]
fn power_check_passes() {
    let v = json(&["power-check", "--p", "1:2:3", "--q", "2:1:1", "-m", "2", "-n", "2"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_small_grid() {
    let v = json(&["verify", "--m", "1,1", "--n", "1,1", "--jobs", "2"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn grid_files() {
    let path = write(
        "grid.json",
        r#"{ "P": [["1","1","2"],["1","1","3"]], "M": [1,1], "Q": [["1","2","1"]], "N": [2] }"#,
    );
    let v = json(&["grid", "--grid", &path]);
    assert_eq!(v["swapped"], true);
    assert_eq!(v["mult"], serde_json::json!([[2, 2]]));
}

#[test]
fn hadamard_and_join_of_files() {
    let a = write(
        "a.json",
        r#"{ "vars": ["x0","x1","x2"], "gens": ["x1 - 2*x0", "x2 - 3*x0"] }"#,
    );
    let b = write(
        "b.json",
        r#"{ "vars": ["x0","x1","x2"], "gens": ["2*x1 - x0", "2*x2 - x0"] }"#,
    );
    let v = json(&["hadamard", "--ideal-a", &a, "--ideal-b", &b]);
    // [1:2:3] ⋆ [2:1:1] = [1:1:3/2]
    let gens: Vec<String> = v["gens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap().to_string())
        .collect();
    assert_eq!(gens.len(), 2);
    let j = json(&["join", "--ideal-a", &a, "--ideal-b", &b]);
    assert_eq!(j["vars"], serde_json::json!(["x0", "x1", "x2"]));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(hfg(&["invariants", "--m", "2,x", "--n", "1"]).0, 2);
    assert_eq!(hfg(&["grid", "--m", "1", "--n", "1", "--grid", "g.json"]).0, 2);
    assert_eq!(hfg(&["grid", "--grid", "/nonexistent/grid.json"]).0, 2);
    assert_eq!(hfg(&["power-check", "--p", "1:0:0", "--q", "0:1:0"]).0, 2);
    let (code, _, err) = hfg(&["verify", "--m", "2,3,3", "--n", "2,3,4,4"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");
}
