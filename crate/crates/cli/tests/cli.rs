use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> (i32, Value, String) {
    let mut argv = vec!["latdeg"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = latdeg_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    let out = String::from_utf8(out).unwrap();
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    (code, value, String::from_utf8(err).unwrap())
}

fn ok(args: &[&str], stdin: &str) -> Value {
    let (code, v, err) = run(args, stdin);
    assert_eq!(code, 0, "{err}");
    v
}

fn generate(args: &[&str]) -> String {
    let mut a = vec!["generate"];
    a.extend_from_slice(args);
    ok(&a, "").to_string()
}

const SQUARE: &str = r#"{"ambient_dim": 2, "points": [[1, 1], [0, 0], [1, 0], [0, 1], [0, 0]]}"#;

#[test]
fn prism_hstar_through_a_pipe() {
    let prism = generate(&["prism", "--heights", "3,2"]);
    assert_eq!(ok(&["hstar"], &prism), json!({ "hstar": [1, 4] }));
}

#[test]
fn exceptional_triangle_has_fourteen_triangulations() {
    let t = generate(&["exceptional", "--n", "2"]);
    assert_eq!(ok(&["triangulations", "count"], &t), json!({ "count": 14 }));
    let g = ok(&["triangulations", "flipgraph"], &t);
    assert_eq!(g["vertices"], 14);
    assert_eq!(g["edges"].as_array().unwrap().len(), 21);
    assert_eq!(g["connected"], true);
    let s = ok(&["secondary"], &t);
    assert_eq!((s["dimension"].clone(), s["vertices"].clone(), s["facets"].clone()), (json!(3), json!(14), json!(9)));
}

#[test]
fn verify_example_matches() {
    let v = ok(&["adet", "--verify-example"], "");
    assert_eq!(v["match"], true);
    assert_eq!(v["assignment"]["a_{2,1}"], "c0");
}

#[test]
fn adet_lines_for_two_segments() {
    let v = ok(&["adet", "--heights", "1,1"], "");
    assert_eq!(v["total_degree"], 6);
    let terms: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t.starts_with("1 ") || t.starts_with("-1 ")));
    let (code, v, _) = run(&["adet", "--heights", "1,0"], "");
    assert_eq!((code, v), (2, json!({})));
}

#[test]
fn document_roundtrip_is_canonical() {
    let tmp = std::env::temp_dir().join(format!("latdeg-square-{}.json", std::process::id()));
    std::fs::write(&tmp, SQUARE).unwrap();
    let path = tmp.to_str().unwrap();
    let once = ok(&["generate", "dilate", "--k", "1", "--input", path], "");
    assert_eq!(once["points"], json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
    let twice = ok(&["generate", "dilate", "--k", "1"], &once.to_string());
    assert_eq!(once, twice);
    std::fs::remove_file(tmp).unwrap();
}

#[test]
fn info_degree_and_classify() {
    let info = ok(&["info"], SQUARE);
    assert_eq!(info["dimension"], 2);
    assert_eq!(info["lattice_point_count"], 4);
    assert_eq!(ok(&["degree"], SQUARE), json!({ "degree": 1, "degree_via_interior": 1, "agree": true }));
    let scrambled = ok(&["generate", "scramble", "--seed", "3"], &generate(&["prism", "--heights", "2,1,1"]));
    let c = ok(&["classify"], &scrambled.to_string());
    assert_eq!(c["tag"], "LawrencePrism");
    assert_eq!(c["heights"], json!([2, 1, 1]));
}

#[test]
fn constructions() {
    let seg = r#"{"ambient_dim": 1, "points": [[0], [2]]}"#;
    let arr = format!("[{seg}, {seg}]");
    let c = ok(&["generate", "cayley"], &arr);
    assert_eq!(c["ambient_dim"], 2);
    assert_eq!(ok(&["hstar"], &c.to_string()), json!({ "hstar": [1, 3] }));
    let p = ok(&["generate", "pyramid", "--r", "2"], &generate(&["exceptional", "--n", "2"]));
    assert_eq!(ok(&["hstar"], &p.to_string()), json!({ "hstar": [1, 3] }));
    let b = ok(&["generate", "basic", "--n", "3"], "");
    assert_eq!(b["points"].as_array().unwrap().len(), 4);
}

#[test]
fn malformed_input_exits_two_with_empty_object() {
    for (args, stdin) in [
        (vec!["hstar"], "not json"),
        (vec!["hstar"], r#"{"ambient_dim": 2, "points": [[0, 0], [1]]}"#),
        (vec!["hstar"], r#"{"ambient_dim": 2, "points": []}"#),
        (vec!["frobnicate"], ""),
        (vec!["generate", "prism"], ""),
    ] {
        let (code, v, err) = run(&args, stdin);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(v, json!({}));
        assert!(!err.is_empty());
    }
}

#[test]
fn caps_exit_one() {
    let big = generate(&["prism", "--heights", "4,4,4"]);
    let (code, v, err) = run(&["triangulations", "count"], &big);
    assert_eq!((code, v), (1, json!({})));
    assert!(err.contains("cap"));
    let (code, _, _) = run(&["triangulations", "count", "--max-points", "3"], SQUARE);
    assert_eq!(code, 1);
}

#[test]
fn binary_pipeline() {
    let bin = env!("CARGO_BIN_EXE_latdeg");
    let gen = Command::new(bin).args(["generate", "prism", "--heights", "1,1,2"]).output().unwrap();
    assert!(gen.status.success());
    let mut child = Command::new(bin)
        .args(["triangulations", "count"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({ "count": 18 }));
    let bad = Command::new(bin).arg("hstar").stdin(Stdio::null()).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&bad.stdout).trim(), "{}");
}
