use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cocenter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocenter")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = cocenter(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cocenter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn sl4_dimension_report() {
    let v = json(&["dim", "--group", "SL4", "--w", "s1 s2 s0 s1 s2 s3 s2 s1 s0 s1", "--b", "identity", "--json"]);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["irr_max"], "1");
    let pieces: Vec<u64> = v["pieces"].as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
    assert!(pieces.contains(&7) && pieces.contains(&8), "{pieces:?}");
    let text = String::from_utf8(cocenter(&["dim", "--group", "SL4", "--w", "s1 s2 s0 s1 s2 s3 s2 s1 s0 s1", "--b", "identity"]).stdout).unwrap();
    assert!(text.contains("dim    8"));
    assert!(text.contains("dims 8, 7"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cocenter(args).status.code();
    assert_eq!(code(&["dim", "--group", "SL4", "--w", "s9", "--b", "identity"]), Some(2));
    assert_eq!(code(&["length", "--group", "GL3", "--w", "s1 **"]), Some(2));
    assert_eq!(code(&["length", "--group", "GL3", "--w", "s1", "--colour"]), Some(2));
    assert_eq!(code(&["bgmu", "--group", "GL3", "--mu", "1,x,0"]), Some(2));
    assert_eq!(code(&["bgmu", "--group", "GL3", "--mu", "0,1,0"]), Some(3));
    assert_eq!(code(&["describe", "--group", "E9"]), Some(3));
    assert_eq!(code(&["dim", "--group", "SL3", "--w", "s1", "--b", "identity", "--k", "0,1,2"]), Some(3));
    assert_eq!(code(&["poset", "--group", "SL3", "--kind", "straight", "--max-len", "6", "--length-bound", "3"]), Some(4));
    assert_eq!(code(&["describe", "--group", "GL2"]), Some(0));
}

#[test]
fn bgmu_gl3() {
    let out = cocenter(&["bgmu", "--group", "GL3", "--mu", "1,0,0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("3 classes"));
    let v = json(&["bgmu", "--group", "GL3", "--mu", "1,0,0", "--json"]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn chartable_a2() {
    let text = String::from_utf8(cocenter(&["chartable", "--group", "A2"]).stdout).unwrap();
    assert!(text.contains("-(q + 1)(q^2 + q + 1)"), "{text}");
    let v = json(&["chartable", "--group", "A2", "--kernel", "-1", "--json"]);
    assert_eq!(v["kernel"]["vectors"].as_array().unwrap().len(), 1);
    let v = json(&["chartable", "--group", "C2", "--params", "q0,q1", "--json"]);
    assert_eq!(v["params"], serde_json::json!(["q0", "q1"]));
}

#[test]
fn json_is_byte_deterministic() {
    let args = ["classpoly", "--group", "SL3", "--w", "s1 s2 s0 s1 s2", "--json"];
    let a = cocenter(&args).stdout;
    let b = cocenter(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn printed_elements_reparse() {
    let mut printed = Vec::new();
    let v = json(&["classpoly", "--group", "GL3", "--w", "t[1,0,-1] * s1 * s2 * s0", "--json"]);
    printed.push(v["w"].as_str().unwrap().to_string());
    for c in v["classes"].as_array().unwrap() {
        printed.push(c["rep"].as_str().unwrap().to_string());
    }
    let v = json(&["adm", "--group", "GL3", "--mu", "1,1,0", "--json"]);
    for w in v["adm"].as_array().unwrap() {
        printed.push(w.as_str().unwrap().to_string());
    }
    assert!(printed.len() >= 10);
    for p in printed {
        let again = json(&["length", "--group", "GL3", "--w", &p, "--json"]);
        assert_eq!(again["w"], p.as_str());
    }
}

#[test]
fn toml_spec_file_and_twist() {
    let path = scratch("a2.toml");
    std::fs::write(&path, "cartan = [[2, -1], [-1, 2]]\nlattice = \"ad\"\ntwist = \"flip\"\n").unwrap();
    let v = json(&["describe", "--group", path.to_str().unwrap(), "--json"]);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["twist"]["permutation"], serde_json::json!([0, 2, 1]));
    assert_eq!(v["omega"], serde_json::json!(["Z/3"]));
    let v = json(&["describe", "--group", path.to_str().unwrap(), "--twist", "id", "--json"]);
    assert_eq!(v["twist"]["permutation"], serde_json::json!([0, 1, 2]));
    std::fs::write(&path, "preset = \"GL3\"\ncolour = 1\n").unwrap();
    assert_eq!(cocenter(&["describe", "--group", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reduce_writes_the_tree() {
    let dot = scratch("tree.dot");
    let out = cocenter(&[
        "reduce", "--group", "SL4", "--w", "s1 s2 s0 s1 s2 s3 s2 s1 s0 s1", "--dot", dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&dot).unwrap();
    assert!(body.starts_with("digraph reduction"));
    assert!(body.contains("\\n10, 8\""));
    assert_eq!(body.matches("-inf").count(), 4);
    assert_eq!(body.matches(" -> ").count(), 10);
}

#[test]
fn poset_exports() {
    let dot = scratch("poset.dot");
    let csv = scratch("poset.csv");
    let out = cocenter(&[
        "poset", "--group", "GL4", "--twist", "flip", "--k", "3",
        "--dot", dot.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("s1 < s2*s3"), "{text}");
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 22);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("rankdir=BT"));
    assert_eq!(
        cocenter(&["describe", "--group", "GL2", "--dot", dot.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn quadruple_comparison() {
    let v = json(&["quadruple", "--group", "SL3", "--w", "s1", "--with", "s0", "--json"]);
    assert_eq!(v["equivalent"], "Yes");
    let v = json(&["quadruple", "--group", "SL3", "--w", "s1 s2", "--with", "s0 s1", "--json"]);
    assert_eq!(v["equivalent"], "No");
}
