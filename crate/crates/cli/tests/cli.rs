use std::path::PathBuf;
use std::process::{Command, Output};

use hzcolor::canon::is_isomorphic;
use hzcolor::*;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn hz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzcolor"))
        .args(args)
        .current_dir(fixture(""))
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_fixtures() {
    let k = hz(&["classify", "k5minus.g6"]);
    assert_eq!(k.status.code(), Some(2));
    let v = json(&k);
    assert_eq!(v["chromatic_index"], 5);
    assert_eq!(v["witness"]["Overfull"]["edges"], 9);

    let p = hz(&["classify", "pstar.el"]);
    assert_eq!(p.status.code(), Some(2));
    assert_eq!(json(&p)["chromatic_index"], 4);
    assert_eq!(json(&p)["witness"], "PetersenMinusVertex");

    let c = hz(&["classify", "c6.el"]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json(&c)["chromatic_index"], 2);
}

#[test]
fn color_fixtures() {
    let out = hz(&["color", "--vizing", "petersen.g6"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["colors_used"], 4);
    let g = from_graph6(&std::fs::read_to_string(fixture("petersen.g6")).unwrap()).unwrap();
    let rec: ColoringRecord = serde_json::from_value(v["coloring"].clone()).unwrap();
    let c = EdgeColoring::from_record(&g, &rec).unwrap();
    verify_proper(&g, 4, c.colors()).unwrap();

    let c6 = hz(&["color", "--optimal", "c6.el"]);
    assert!(c6.status.success());
    assert_eq!(json(&c6)["colors_used"], 2);

    let k5 = hz(&["color", "--optimal", "k5.g6"]);
    assert_eq!(k5.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&k5.stderr).contains("not a candidate"));
}

#[test]
fn gen_commands() {
    let out = hz(&["gen", "odelta", "--delta", "4", "--n1", "3"]);
    assert!(out.status.success());
    let g = from_graph6(&stdout(&out)).unwrap();
    assert!(is_isomorphic(&g, &named::k5_minus()));

    let p = hz(&["gen", "pstar", "--to", "el"]);
    let g = from_edge_list(&stdout(&p)).unwrap();
    assert_eq!((g.n(), g.m()), (9, 12));
    assert!(is_isomorphic(&g, &named::petersen_minus_vertex()));

    let bad = hz(&["gen", "odelta", "--delta", "5", "--n1", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("invalid O_Δ parameters"));
}

#[test]
fn oracle_and_verify() {
    assert_eq!(json(&hz(&["oracle", "petersen.g6"]))["chromatic_index"], 4);
    assert_eq!(json(&hz(&["oracle", "empty.el"]))["chromatic_index"], 0);
    let v = hz(&["verify", "--suite", "val", "--n-max", "6"]);
    assert!(v.status.success());
    let s = json(&v);
    assert_eq!(s["failures"], 0);
    assert!(s["checks"]["val"]["pass"].as_u64().unwrap() > 0);
}

#[test]
fn verify_writes_jsonl() {
    let dir = std::env::temp_dir().join(format!("hzcolor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reports.jsonl");
    let out = hz(&[
        "verify",
        "--suite",
        "adjacency",
        "--n-max",
        "1",
        "--family-delta",
        "5",
        "--jsonl",
        path.to_str().unwrap(),
        "--output",
        "table",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("adjacency"));
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines() {
        let r: CheckReport = serde_json::from_str(line).unwrap();
        assert_eq!(r.check, CheckId::Adjacency);
    }
    assert_eq!(text.lines().count(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_is_reproducible() {
    for args in [
        &["color", "--optimal", "pstar.el"][..],
        &["color", "--vizing", "petersen.g6", "--seed", "3"],
        &["classify", "k5minus.g6", "--output", "table"],
    ] {
        let a = hz(args);
        let b = hz(args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hz(&["classify", "c6.el", "--bogus"]).status.code(), Some(1));
    assert_eq!(hz(&["color", "c6.el"]).status.code(), Some(1));
    assert_eq!(hz(&["classify", "missing.el"]).status.code(), Some(1));
    assert_eq!(
        hz(&["classify", "c6.el", "--format", "g6"]).status.code(),
        Some(1)
    );
    assert!(hz(&["--help"]).status.success());
}

#[test]
fn explain_spells_out_the_reason() {
    let out = stdout(&hz(&["explain", "k5minus.g6"]));
    assert!(out.contains("overfull"));
    assert!(out.contains("Class 2"));
    assert!(stdout(&hz(&["explain", "k5.g6"])).contains("not in scope"));
}
