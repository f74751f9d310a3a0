use std::path::PathBuf;
use std::process::Command;

use graypaste_cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn call(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("graypaste").chain(args.iter().copied()));
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json)
}

#[test]
fn validate_reports_figure_one() {
    let (code, v) = call(&["validate", &fixture("figure1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["interior_faces"], 4);
    assert_eq!(v["faces"].as_array().unwrap().len(), 4);
}

#[test]
fn cyclic_scheme_exits_one_with_kind() {
    let (code, v) = call(&["validate", &fixture("cyclic.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "directed-cycle");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(call(&["validate"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    let (code, v) = call(&["validate", "/nonexistent/scheme.json"]);
    assert_eq!((code, v["kind"].as_str()), (2, Some("io")));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": 3}").unwrap();
    let (code, v) = call(&["validate", bad.to_str().unwrap()]);
    assert_eq!((code, v["kind"].as_str()), (2, Some("malformed-document")));
    assert_eq!(call(&["extensions", &fixture("figure1.json"), "--limit", "0"]).0, 2);
}

#[test]
fn coherence_check_certifies_the_three_face_example() {
    let (code, v) = call(&["coherence-check", &fixture("bigon3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["objects"], 2);
    assert_eq!(v["normal_form"], "F1 F3 F2");
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn seed_rules() {
    let s = fixture("bigon3.json");
    assert_eq!(call(&["normalize", &s, "--strategy", "random"]).0, 2);
    assert_eq!(call(&["normalize", &s, "--seed", "3"]).0, 2);
    assert_eq!(call(&["coherence-check", &s, "--mode", "sampled"]).0, 2);
    let (code, v) = call(&["normalize", &s, "--strategy", "random", "--seed", "3", "--order", "F3,F1,F2"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "F1 F3 F2");
    assert_eq!(v["rho"], 1);
    let (code, v) = call(&["coherence-check", &s, "--mode", "sampled", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["tessellation"]["mode"], "sampled");
    assert_eq!(v["tessellation"]["seed"], 9);
}

#[test]
fn emitted_documents_round_trip() {
    for name in ["figure1.json", "intro.json", "bigon3.json", "stacked_bigons.json"] {
        let first = run(["graypaste", "validate", "--emit", &fixture(name)]);
        assert_eq!(first.code, 0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("emitted.json");
        std::fs::write(&path, &first.stdout).unwrap();
        let second = run(["graypaste", "validate", "--emit", path.to_str().unwrap()]);
        assert_eq!(second.stdout, first.stdout, "{name}");
    }
}

#[test]
fn json_output_is_sorted_and_newline_terminated() {
    let out = run(["graypaste", "relations", &fixture("figure1.json")]);
    assert!(out.stdout.ends_with('\n'));
    let keys: Vec<String> = serde_json::from_str::<Value>(&out.stdout)
        .unwrap()
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let positions: Vec<usize> = keys.iter().map(|k| out.stdout.find(&format!("\"{k}\"")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn compose_prints_the_composite_and_witness() {
    let (code, v) = call(&[
        "compose",
        &fixture("intro.json"),
        "--labels",
        &fixture("intro_labels.json"),
        "--order",
        "alpha gamma beta phi delta",
        "--witness",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["composite"], "mδ·φd·gβ·γea·cαa");
    let w = v["witness"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["before"], "gβ·γea");
    assert_eq!(w[0]["after"], "γd·cfβ");
    let (_, v) = call(&["compose", &fixture("intro.json"), "--labels", &fixture("intro_labels.json")]);
    assert_eq!(v["composite"], "mδ·φd·γd·cfβ·cαa");
}

#[test]
fn bad_labelling_exits_one() {
    let (code, v) = call(&["compose", &fixture("bigon.json"), "--labels", &fixture("bigon_bad_labels.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "labelling-violation");
    assert_eq!(v["violations"][0]["cell"], "face F codomain");
}

#[test]
fn out_flag_writes_the_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.dot");
    let out = run(["graypaste", "exchange-graph", &fixture("intro.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(path).unwrap();
    assert!(dot.starts_with("digraph exchange {"));
    assert_eq!(dot.matches("->").count(), 2);
}

#[test]
fn mirrored_orientation_swaps_face_sides() {
    let (_, plain) = call(&["validate", &fixture("figure1.json")]);
    let (code, mirrored) = call(&["validate", "--mirror", &fixture("figure1.json")]);
    assert_eq!(code, 0);
    assert_eq!(plain["top"], mirrored["bottom"]);
    let sides = |v: &Value| {
        let mut out: Vec<(Value, Value)> = v["faces"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| (f["sigma"].clone(), f["tau"].clone()))
            .collect();
        out.sort_by_key(|p| p.0.to_string());
        out
    };
    let mut flipped: Vec<(Value, Value)> = sides(&plain).into_iter().map(|(a, b)| (b, a)).collect();
    flipped.sort_by_key(|p| p.0.to_string());
    assert_eq!(sides(&mirrored), flipped);
}

#[test]
fn binary_exit_codes_and_env_limit() {
    let bin = env!("CARGO_BIN_EXE_graypaste");
    let ok = Command::new(bin).args(["faces", &fixture("bigon3.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let limited = Command::new(bin)
        .env("GRAYPASTE_LIMIT", "2")
        .args(["extensions", &fixture("bigon3.json")])
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&limited.stdout).unwrap();
    assert_eq!(v["kind"], "face-limit");
    let flag_wins = Command::new(bin)
        .env("GRAYPASTE_LIMIT", "2")
        .args(["extensions", "--limit", "3", &fixture("bigon3.json")])
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn output_is_deterministic_for_a_fixed_seed() {
    let s = fixture("intro.json");
    let args = ["graypaste", "coherence-check", s.as_str(), "--mode", "sampled", "--seed", "17"];
    assert_eq!(run(args), run(args));
    let args = ["graypaste", "normalize", s.as_str(), "--strategy", "random", "--seed", "5"];
    assert_eq!(run(args), run(args));
}
