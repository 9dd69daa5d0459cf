use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperpoly"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const PENTAGON: &str = r#"{"format":1,"carrier":["x","y","z"],"hyperedges":[["x"],["y"],["z"],["x","y"],["y","z"]]}"#;

#[test]
fn fvector_of_pentagon() {
    let p = scratch("pentagon.json", PENTAGON);
    assert_eq!(run(&["hg", "fvector", &p]), (0, "5 5 1\n".into(), String::new()));
}

#[test]
fn hrep_of_pentagon() {
    let p = scratch("pentagon-hrep.json", PENTAGON);
    let (code, out, _) = run(&["hg", "realize", "--hrep", &p]);
    assert_eq!(code, 0);
    let rhs: Vec<&str> = out.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(rhs, ["27", "3", "3", "3", "9", "9"]);
    assert_eq!(out.lines().filter(|l| l.contains("==")).count(), 1);
    assert!(out.contains("x + y >= 9\n"));
}

#[test]
fn vertices_and_verify() {
    let p = scratch("pentagon-v.json", PENTAGON);
    let (code, out, _) = run(&["hg", "realize", "--vertices", &p]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["vertices"]["x(y(z))"], serde_json::json!(["18/1", "6/1", "3/1"]));
    let (code, out, _) = run(&["hg", "realize", "--verify", &p]);
    assert_eq!(code, 0);
    assert!(out.ends_with("PASS\n"));
}

#[test]
fn faces_hasse_constructions() {
    let p = scratch("pentagon-f.json", PENTAGON);
    let (_, faces, _) = run(&["hg", "faces", &p]);
    assert_eq!(faces.lines().count(), 11);
    assert_eq!(faces.lines().last(), Some("2 {x,y,z}"));
    let (_, hasse, _) = run(&["hg", "hasse", &p]);
    assert!(hasse.starts_with("digraph hasse {"));
    assert_eq!(hasse.matches(" -> ").count(), 15);
    let (_, vs, _) = run(&["hg", "constructions", &p]);
    assert_eq!(vs, "x(y(z))\nx(z(y))\ny(x,z)\nz(x(y))\nz(y(x))\n");
}

#[test]
fn classify_tree_four() {
    let t = scratch("t4.json", r#"{"format":1,"label":"a","children":[{"label":"b","children":[{"label":"d"}]},{"label":"c"}]}"#);
    let (code, out, _) = run(&["op", "classify", "--tree", &t]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("label=\"beta\"").count(), 2);
    assert_eq!(out.matches("label=\"theta\", style=dashed, dir=none").count(), 3);
    assert!(out.contains("[label=\"(ac)(bd)\"]"));
    let (_, again, _) = run(&["op", "classify", "--term", "a(b(d),c)"]);
    assert_eq!(out, again);
}

#[test]
fn words_and_graph() {
    let (code, out, _) = run(&["op", "words", "--term", "a(b(c,d),e)"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 18);
    assert!(out.contains("((ae)(bc))d "));
    let (_, dot, _) = run(&["op", "graph", "--term", "a(b(c,d),e)"]);
    assert_eq!(dot.matches("style=dashed").count(), 2);
}

#[test]
fn truncation_rounds_chain() {
    let (code, s1, _) = run(&["trunc", "init", "--base", "x,y,z,u"]);
    assert_eq!(code, 0);
    let s1 = scratch("s1.json", &s1);
    let t1 = scratch("t1.json", r#"{"format":1,"hyperedges":[["x","y"],["x","y","z","u"]]}"#);
    let (code, s2, err) = run(&["trunc", "round", "--state", &s1, "--truncations", &t1, "--atomize"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&s2).unwrap();
    assert_eq!(v["round"], 2);
    assert_eq!(v["facets"].as_array().unwrap().len(), 5);
    let s2 = scratch("s2.json", &s2);
    let t2 = scratch(
        "t2.json",
        r#"{"format":1,"hyperedges":[["u"],["x"],["y"],["z"],["x+y"],[{"x":1},"x+y"],["u","x","y","z","x+y"]]}"#,
    );
    let (code, s3, _) = run(&["trunc", "round", "--state", &s2, "--truncations", &t2]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&s3).unwrap();
    assert_eq!(v["census"]["tamed_constructions"], 8);
    assert!(v["facets"].as_array().unwrap().contains(&serde_json::json!({"x": 2, "y": 1})));
}

#[test]
fn words_with_holes() {
    let (code, out, _) = run(&["--ascii", "pba", "decode", "3", ".1(.1.2).2; .1={x1,x2}, .2={x3,x4}"]);
    assert_eq!(code, 0);
    let construct = out.trim().to_string();
    let (code, word, _) = run(&["--ascii", "pba", "encode", "3", &construct]);
    assert_eq!(code, 0);
    assert_eq!(word, ".1[.1.2].2; .1={x1,x2}, .2={x3,x4}\n");
    let (code, _, err) = run(&["pba", "decode", "3", "(x1x2)(.1.1); .1={x3,x4}"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing standard bracket"));
    let (code, out, _) = run(&["pba", "census", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("f-vector: 12 12 1\n"));
}

#[test]
fn input_errors_exit_two_with_distinct_messages() {
    let missing = run(&["hg", "fvector", "/nonexistent/h.json"]);
    let garbage = run(&["hg", "fvector", &scratch("garbage.json", "{not json")]);
    let version = run(&["hg", "fvector", &scratch("v2.json", r#"{"format":2,"carrier":["x"],"hyperedges":[["x"]]}"#)]);
    let atomic = run(&["hg", "fvector", &scratch("na.json", r#"{"carrier":["x","y"],"hyperedges":[["x"],["x","y"]]}"#)]);
    let guard = run(&["--max-carrier", "2", "hg", "fvector", &scratch("pentagon-g.json", PENTAGON)]);
    let usage = run(&["hg", "nonsense"]);
    let all = [&missing, &garbage, &version, &atomic, &guard, &usage];
    assert!(all.iter().all(|r| r.0 == 2 && r.1.is_empty()));
    assert!(missing.2.contains("cannot read"));
    assert!(garbage.2.contains("malformed JSON"));
    assert!(version.2.contains("unsupported format version 2"));
    assert!(atomic.2.contains("not atomic"));
    assert!(guard.2.contains("guard exceeded"));
    let fixed = run(&["hg", "fvector", "--atomize", &scratch("na2.json", r#"{"carrier":["x","y"],"hyperedges":[["x"],["x","y"]]}"#)]);
    assert_eq!(fixed.1, "2 1\n");
}
