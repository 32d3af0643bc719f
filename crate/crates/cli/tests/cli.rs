use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn hkrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkrlab")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn innermax_suite_passes_with_exit_zero() {
    let out = hkrlab(&["suite", "run", "innermax"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["suite"], "innermax");
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["summary"]["error"], 0);
    let names: Vec<&str> = report["cases"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn full_run_is_byte_identical_for_a_seed() {
    let a = hkrlab(&["suite", "run", "all", "--seed", "7"]);
    let b = hkrlab(&["suite", "run", "all", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["seed"], 7);
}

#[test]
fn unknown_suite_and_bad_flags_exit_two() {
    assert_eq!(hkrlab(&["suite", "run", "nosuch"]).status.code(), Some(2));
    assert_eq!(hkrlab(&["genus", "series", "--name", "ahat"]).status.code(), Some(2));
    assert_eq!(hkrlab(&["verbitsky", "dims", "--model", "/nonexistent.json", "--max-degree", "4"]).status.code(), Some(2));
}

#[test]
fn ahat_series_table() {
    let out = hkrlab(&["genus", "series", "--name", "ahat", "--roots", "1", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["coefficients"], json!({"0": "1/1", "2": "-1/24", "4": "7/5760"}));
}

#[test]
fn power_equation_has_the_trivial_solution_only() {
    let out = hkrlab(&["holonomy", "solve", "--power-equation", "--kmax", "64"]);
    let v = json_of(&out);
    assert_eq!(v["solutions"], json!([["1", 1]]));
    assert!(v["proof"]["statement"].as_str().unwrap().contains("powers of two"));
    let chi = json_of(&hkrlab(&["holonomy", "solve", "--n", "3"]));
    assert_eq!(chi["solutions"], json!([[1, [3]], [2, [1, 1, 1]]]));
}

#[test]
fn model_files() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3_b3.json", r#"{"gram": [["1","0","0"],["0","1","0"],["0","0","-1"]], "n": 1}"#);
    let dims = json_of(&hkrlab(&["verbitsky", "dims", "--model", &k3, "--max-degree", "4"]));
    assert_eq!(dims["dims"], json!([1, 3, 1]));

    let swap = write(
        dir.path(),
        "swap.json",
        r#"[[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]]"#,
    );
    let perm = json_of(&hkrlab(&["holonomy", "perm", "--matrix", &swap, "--blocks", "1,1"]));
    assert_eq!(perm["rho"], json!([1, 0]));
    assert_eq!(perm["lambda"], json!(["1/1", "1/1"]));

    let single_block = write(dir.path(), "identity.json", r#"[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"#);
    assert_eq!(hkrlab(&["holonomy", "perm", "--matrix", &single_block, "--blocks", "2"]).status.code(), Some(0));
    let scaled = write(dir.path(), "scaled.json", r#"[["2",0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"#);
    let out = hkrlab(&["holonomy", "perm", "--matrix", &scaled, "--blocks", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "domain");

    let torus = write(dir.path(), "torus.json", r#"{"kind": "torus", "n": 1}"#);
    let out = hkrlab(&["pair", "suite", "--model", &torus]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let ann = json_of(&hkrlab(&["pair", "annihilators", "--model", &torus]));
    assert_eq!(ann["correspondence"], true);
    assert_eq!(ann["r_basis"].as_array().unwrap().len(), 2);
}

#[test]
fn diagram_and_weight_commands() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.sexp", "(diagram (tri u (a b c)) (tri v (d e f)) (edge a d) (edge b f) (edge c e))");
    let summary = json_of(&hkrlab(&["diagram", "eval", "--diagram", &theta]));
    assert_eq!(summary["degree"], 1);
    assert_eq!(summary["trivalent"], 2);

    let w = json_of(&hkrlab(&["weights", "eval", "--diagram", &theta, "--backend", "sl2"]));
    assert_eq!(w["weight"]["terms"][0]["endomorphism"], json!(["12/1", "0/1", "0/1", "12/1"]));
    assert_eq!(hkrlab(&["weights", "eval", "--diagram", &theta, "--backend", "e8"]).status.code(), Some(2));

    let xy = write(dir.path(), "xy.sexp", "(diagram (leg a star x) (leg b star y) (edge a b))");
    let xz = write(dir.path(), "xz.sexp", "(diagram (leg a star x) (leg b star z) (edge a b))");
    let paired = json_of(&hkrlab(&["diagram", "op", "pair", &xy, &xz, "--glued", "x"]));
    assert_eq!(paired["terms"], 1);
    assert!(paired["series"].as_str().unwrap().contains("star y"));
    let xx = write(dir.path(), "xx.sexp", "(diagram (leg a star x) (leg b star x) (edge a b))");
    let out = hkrlab(&["diagram", "op", "pair", &xx, &xx, "--glued", "x"]);
    assert_eq!(out.status.code(), Some(1));
}
