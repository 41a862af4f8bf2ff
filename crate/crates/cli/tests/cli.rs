use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bifix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bifix")).args(args).output().expect("binary runs")
}

fn bifix_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bifix"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn save(dir: &Path, name: &str, o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn transform_fibonacci_at_a() {
    let o = bifix(&["transform", "--set", "fibonacci", "--code", "aa ab ba", "--pivot", "a"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a baab bab\n");
}

#[test]
fn group_index_and_rank() {
    let o = bifix(&["group", "index", "--alphabet", "a,b", "--words", "a bab baab"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("index 2\n") && out.contains("rank 3\n"), "{out}");
    let v = json(&bifix(&["group", "rank", "--alphabet", "a,b", "--words", "a bab baab", "--format", "json"]));
    assert_eq!((v["index"].as_u64(), v["rank"].as_u64(), v["basis"].as_bool()), (Some(2), Some(3), Some(true)));
}

#[test]
fn classify_chacon_from_a_morphism_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"alphabet": ["a","b","c"], "rules": {"a": ["a","a","b","c"], "b": ["b","c"], "c": ["a","b","c"]}, "seed": "a"}"#;
    let path = dir.path().join("chacon.json");
    std::fs::write(&path, spec).unwrap();
    let o = bifix(&["classify", "--morphism", path.to_str().unwrap(), "--up-to", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row = |w: &str| out.lines().find(|l| l.split_whitespace().next() == Some(w)).unwrap().to_string();
    assert!(row("abc").contains("strong"), "{out}");
    assert!(row("bca").contains("weak"), "{out}");
    let v = json(&bifix(&["classify", "--morphism", path.to_str().unwrap(), "--up-to", "4", "--format", "json"]));
    assert_eq!(v["class"], "mixed");
    assert_eq!(v["acyclic"]["witness"], "ε");
}

#[test]
fn exit_codes() {
    // not S-maximal: analysis failure
    assert_eq!(bifix(&["code-check", "--set", "fibonacci", "--code", "a"]).status.code(), Some(1));
    assert_eq!(bifix(&["code-degree", "--set", "fibonacci", "--code", "a"]).status.code(), Some(1));
    // horizon and usage errors
    let o = bifix(&["transform", "--set", "fibonacci", "--code", "aa ab ba", "--pivot", "a", "--horizon", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("need 4"));
    assert_eq!(bifix(&["classify", "--set", "nope"]).status.code(), Some(2));
    assert_eq!(bifix(&["group", "index", "--alphabet", "a,b", "--words", "a c"]).status.code(), Some(2));
    assert_eq!(bifix(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bifix(&["complexity", "--set", "fibonacci", "--format", "dot"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(bifix(&["complexity", "--factors", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn words_from_stdin() {
    let o = bifix_stdin(&["group", "contains", "--alphabet", "a,b,c", "--words", "-", "--element", "cb"], "aa ab ca\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c·b is in the subgroup\n");
    let o = bifix_stdin(&["code-check", "--alphabet", "a,b", "--code", "-"], "a ab");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    // factor set → every set-consuming command
    let fs = save(d, "fib.json", &bifix(&["generate", "--set", "fibonacci", "--horizon", "12", "--format", "json"]));
    let v = json(&bifix(&["complexity", "--factors", &fs, "--format", "json"]));
    assert_eq!(v["p"], serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13]));
    assert_eq!(v["affine"], 1);

    // transformed code → code commands
    let code = save(
        d,
        "y.json",
        &bifix(&["transform", "--factors", &fs, "--code", "aa ab ba", "--pivot", "a", "--format", "json"]),
    );
    let v = json(&bifix(&["code-check", "--factors", &fs, "--code-file", &code, "--format", "json"]));
    assert_eq!((v["bifix"].as_bool(), v["s_maximal"].as_bool(), v["s_degree"].as_u64()), (Some(true), Some(true), Some(2)));
    let v = json(&bifix(&["code-degree", "--set", "fibonacci", "--code-file", &code, "--parses", "bab", "--format", "json"]));
    assert_eq!(v["parses"][0]["parses"], serde_json::json!([["ε", "bab", "ε"], ["b", "a", "b"]]));

    // enumerated codes are code files too
    let v = json(&bifix(&["enumerate", "--factors", &fs, "--degree", "2", "--max-len", "4", "--format", "json"]));
    let first = d.join("first.json");
    std::fs::write(&first, v["codes"][0].to_string()).unwrap();
    assert!(bifix(&["code-check", "--factors", &fs, "--code-file", first.to_str().unwrap()]).status.success());

    // decoded set → factor set input
    let g = save(
        d,
        "g.json",
        &bifix(&[
            "decode", "--set", "fibonacci", "--code", "a baabaab baabab babaab", "--names", "x,y,z,t", "--max-len", "6",
            "--format", "json",
        ]),
    );
    let v = json(&bifix(&["complexity", "--factors", &g, "--format", "json"]));
    assert_eq!(v["p"], serde_json::json!([1, 4, 7, 10, 13, 16, 19]));
    let out = stdout(&bifix(&["code-check", "--factors", &g, "--code", "x,x x,y,x x,z x,t y z,x t,x"]));
    assert!(out.contains("S-degree 2"), "{out}");

    // folded graph → group queries
    let graph = save(d, "h.json", &bifix(&["group", "fold", "--alphabet", "a,b", "--words", "a bab baab", "--format", "json"]));
    assert_eq!(stdout(&bifix(&["group", "transversal", "--graph", &graph])), "ε b\n");
    let v = json(&bifix(&["group", "index", "--graph", &graph, "--format", "json"]));
    assert_eq!(v["index"], 2);
    let dot = stdout(&bifix(&["group", "fold", "--graph", &graph, "--format", "dot"]));
    assert!(dot.starts_with("digraph"));

    // suite report is valid JSON with the same rows as the table
    let v = json(&bifix(&["verify", "--set", "fibonacci", "--horizon", "24", "--max-len", "4", "--format", "json"]));
    assert_eq!(v["rows"][0]["name"], "fibonacci");
    assert_eq!(v["unexpected"], serde_json::json!([]));
}

#[test]
fn returns_and_prefix() {
    let out = stdout(&bifix(&["returns", "--set", "fibonacci", "--word", "ab"]));
    assert!(out.starts_with("R(ab) = {ab aab}\ncomplete true\n"), "{out}");
    assert!(out.contains("index 1, rank 2, basis true"));
    let scanned = stdout(&bifix(&["returns", "--set", "fibonacci", "--word", "ab", "--scan", "200"]));
    assert_eq!(out, scanned);
    assert_eq!(stdout(&bifix(&["generate", "--set", "fibonacci", "--prefix", "13"])), "abaababaabaab\n");
    let o = bifix(&["returns", "--set", "neutral-not-tree", "--word", "b", "--horizon", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn builtins_match_the_registry() {
    for name in ["fibonacci", "tribonacci", "chacon", "cassaigne"] {
        let a = stdout(&bifix(&["generate", "--set", name, "--horizon", "10", "--format", "json"]));
        let spec = serde_json::to_string(&bifix_core::lab::registry::builtin_fixpoint(name).unwrap()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, spec).unwrap();
        let b = stdout(&bifix(&["generate", "--morphism", path.to_str().unwrap(), "--horizon", "10", "--format", "json"]));
        assert_eq!(a, b, "{name}");
    }
}
