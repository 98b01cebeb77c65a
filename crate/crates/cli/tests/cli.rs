use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const W_OF_Z: &str = r#"{"kind":"wmodel","states":[["1"]],"unit":[1]}"#;
const TWO_TRACES: &str = r#"{"kind":"wmodel","states":[["1"],["1"]],"unit":[1]}"#;
const I_OF_Z: &str =
    r#"{"kind":"invariant","states":[["1"]],"unit":[1],"k1":{"free_rank":0,"torsion":[]}}"#;
const PERFORATED: &str = r#"{"kind":"group","cone":"generated","unit":[2],"generators":[[2],[3]]}"#;
const LEXICOGRAPHIC: &str = r#"{"kind":"group","cone":"lexicographic","unit":[1,0]}"#;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).expect("write fixture");
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn cuntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn compare_projection_one_with_soft_one() {
    let s = Sandbox::new();
    let m = s.file("m.json", W_OF_Z);
    let x = s.file("x.json", r#"{"kind":"class","proj":[1]}"#);
    let y = s.file("y.json", r#"{"kind":"class","soft":["1"]}"#);
    let r = json(&cuntz(&["compare", p(&m), p(&x), p(&y)]));
    assert_eq!(r["verdict"], "≥ only");
    assert_eq!(r["x_le_y"], false);
    assert_eq!(r["y_le_x"], true);
    assert!(r["x_le_y_rule"].is_string() && r["y_le_x_rule"].is_string());
}

#[test]
fn compare_equal_and_incomparable_classes() {
    let s = Sandbox::new();
    let m = s.file("m.json", TWO_TRACES);
    let x = s.file("x.json", r#"{"kind":"class","soft":["1","2"]}"#);
    let y = s.file("y.json", r#"{"kind":"class","soft":["2","1"]}"#);
    assert_eq!(
        json(&cuntz(&["compare", p(&m), p(&x), p(&x)]))["verdict"],
        "≤ and ≥"
    );
    assert_eq!(
        json(&cuntz(&["compare", p(&m), p(&x), p(&y)]))["verdict"],
        "neither"
    );
}

#[test]
fn check_suites_on_w_of_z() {
    let s = Sandbox::new();
    let m = s.file("m.json", W_OF_Z);
    for suite in [
        "order-axioms",
        "strict-cone",
        "weak-unperforation",
        "archimedean",
        "oracle-agreement",
    ] {
        let r = json(&cuntz(&["check", p(&m), "--suite", suite]));
        assert_eq!(r["pass"], true, "suite {suite}: {r}");
    }
}

#[test]
fn oracle_agreement_on_a_two_trace_model() {
    let s = Sandbox::new();
    let m = s.file(
        "m.json",
        r#"{"kind":"wmodel","states":[["1","1/2"],["1","2"]],"unit":[1,0]}"#,
    );
    let r = json(&cuntz(&[
        "check",
        p(&m),
        "--suite",
        "oracle-agreement",
        "--seed",
        "7",
    ]));
    assert_eq!(r["pass"], true, "{r}");
    assert_eq!(r["disagreements"], serde_json::json!([]));
}

#[test]
fn perforated_control_is_flagged() {
    let s = Sandbox::new();
    let g = s.file("g.json", PERFORATED);
    let r = json(&cuntz(&["check", p(&g), "--suite", "weak-unperforation"]));
    assert_eq!(r["pass"], false);
    assert_eq!(r["counterexample"]["x"], serde_json::json!([1]));
    assert_eq!(r["counterexample"]["n"], 2);
}

#[test]
fn lexicographic_control_has_an_archimedean_witness() {
    let s = Sandbox::new();
    let g = s.file("g.json", LEXICOGRAPHIC);
    let r = json(&cuntz(&["check", p(&g), "--suite", "archimedean"]));
    assert_eq!(r["pass"], false, "{r}");
}

#[test]
fn unknown_suite_exits_two() {
    let s = Sandbox::new();
    let m = s.file("m.json", W_OF_Z);
    assert_eq!(
        code(&cuntz(&["check", p(&m), "--suite", "associativity"])),
        2
    );
}

#[test]
fn floats_are_rejected() {
    let s = Sandbox::new();
    let m = s.file("m.json", W_OF_Z);
    let x = s.file("x.json", r#"{"kind":"class","soft":[0.5]}"#);
    let out = cuntz(&["compare", p(&m), p(&x), p(&x)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("floating-point"));
}

#[test]
fn invalid_documents_exit_two() {
    let s = Sandbox::new();
    let m = s.file("m.json", W_OF_Z);
    let wrong_kind = s.file("x.json", r#"{"kind":"target","vector":["1"]}"#);
    let unknown_field = s.file("y.json", r#"{"kind":"class","proj":[1],"colour":"red"}"#);
    let missing = s.path("absent.json");
    assert_eq!(
        code(&cuntz(&["compare", p(&m), p(&wrong_kind), p(&wrong_kind)])),
        2
    );
    assert_eq!(
        code(&cuntz(&[
            "compare",
            p(&m),
            p(&unknown_field),
            p(&unknown_field)
        ])),
        2
    );
    assert_eq!(
        code(&cuntz(&["compare", p(&m), p(&missing), p(&missing)])),
        2
    );
}

#[test]
fn vector_realization_table() {
    let s = Sandbox::new();
    let t = s.file("t.json", r#"{"kind":"target","vector":["1"]}"#);
    let out = cuntz(&["realize", p(&t), "--stages", "5", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = table.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows[0], ["stage", "trace", "f", "g", "h", "f_minus_g"]);
    assert_eq!(rows.len(), 6);
    for (i, row) in rows[1..].iter().enumerate() {
        let i = i as u32 + 1;
        let den = 1u64 << i;
        assert_eq!(row[0], i.to_string());
        assert_eq!(row[3], format!("{}/{}", den - 1, den));
        assert_eq!(row[5], format!("1/{den}"));
    }
}

#[test]
fn vector_realization_below_first_stage_exits_two() {
    let s = Sandbox::new();
    let t = s.file("t.json", r#"{"kind":"target","vector":["1"]}"#);
    assert_eq!(code(&cuntz(&["realize", p(&t), "--stages", "0"])), 2);
}

#[test]
fn step_realization_of_the_constant_one() {
    let s = Sandbox::new();
    let t = s.file(
        "t.json",
        r#"{"kind":"target","step":{"partition":["0","1"],"values":["1"],"points":["1","1"]}}"#,
    );
    let out = cuntz(&[
        "realize",
        p(&t),
        "--stages",
        "3",
        "--grid",
        "11",
        "--format",
        "table",
    ]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("stage\tn\tx\tf\tf_i\td"));
    let mut rows = 0;
    for line in lines {
        let row: Vec<&str> = line.split('\t').collect();
        let i: u32 = row[0].parse().unwrap();
        let den = 1u64 << i;
        assert_eq!(row[1], den.to_string());
        let expected = format!("{}/{}", den - 1, den);
        assert_eq!(row[4], expected);
        assert_eq!(row[5], expected);
        rows += 1;
    }
    assert_eq!(rows, 33);
}

#[test]
fn functor_of_integers_is_w_of_z() {
    let s = Sandbox::new();
    let inv = s.file("i.json", I_OF_Z);
    let out_path = s.path("w.json");
    let r = json(&cuntz(&["functor", p(&inv), "--out", p(&out_path)]));
    assert_eq!(r["is_w_of_z"], true);
    let x = s.file("x.json", r#"{"kind":"class","proj":[1]}"#);
    let y = s.file("y.json", r#"{"kind":"class","soft":["1"]}"#);
    let r = json(&cuntz(&["compare", p(&out_path), p(&x), p(&y)]));
    assert_eq!(r["verdict"], "≥ only");
}

fn morphism(source: &str, target: &str, theta0: &str, gamma: &str) -> String {
    let body = |d: &str| {
        let mut v: Value = serde_json::from_str(d).unwrap();
        v.as_object_mut().unwrap().remove("kind");
        v.to_string()
    };
    format!(
        r#"{{"kind":"morphism","source":{},"target":{},"theta0":{theta0},"gamma":{gamma}}}"#,
        body(source),
        body(target)
    )
}

#[test]
fn identity_morphism_induces_the_identity() {
    let s = Sandbox::new();
    let inv = s.file("i.json", I_OF_Z);
    let m = s.file("m.json", &morphism(I_OF_Z, I_OF_Z, "[[1]]", r#"[["1"]]"#));
    let r = json(&cuntz(&["functor", p(&inv), "--morphism", p(&m)]));
    assert_eq!(r["morphism_valid"], true);
    assert_eq!(r["induced"]["is_identity"], true);
    assert_eq!(json(&cuntz(&["morphism-check", p(&m)]))["valid"], true);
}

#[test]
fn trace_collapse_acts_by_the_transpose() {
    let two = r#"{"kind":"invariant","states":[["1"],["1"]],"unit":[1],"k1":{"free_rank":0,"torsion":[]}}"#;
    let s = Sandbox::new();
    let inv = s.file("i.json", two);
    let m = s.file(
        "m.json",
        &morphism(two, I_OF_Z, "[[1]]", r#"[["1"],["0"]]"#),
    );
    let r = json(&cuntz(&["functor", p(&inv), "--morphism", p(&m)]));
    assert_eq!(r["morphism_valid"], true, "{r}");
    assert_eq!(r["induced"]["soft_action"], serde_json::json!([["1", "0"]]));
}

#[test]
fn invalid_morphism_reports_and_exits_two() {
    let s = Sandbox::new();
    let m = s.file("m.json", &morphism(I_OF_Z, I_OF_Z, "[[2]]", r#"[["1"]]"#));
    let out = cuntz(&["morphism-check", p(&m)]);
    assert_eq!(code(&out), 2);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["valid"], false);
}

#[test]
fn emitted_class_documents_reload() {
    let s = Sandbox::new();
    let m = s.file("m.json", TWO_TRACES);
    let x = s.file("x.json", r#"{"kind":"class","proj":[2]}"#);
    let y = s.file("y.json", r#"{"kind":"class","soft":["1/3","5/2"]}"#);
    let sum = s.path("sum.json");
    let r = json(&cuntz(&["add", p(&m), p(&x), p(&y), "--out", p(&sum)]));
    assert_eq!(r["result"]["soft"], serde_json::json!(["7/3", "9/2"]));
    let r = json(&cuntz(&["compare", p(&m), p(&y), p(&sum)]));
    assert_eq!(r["verdict"], "≤ only");
    let soft = s.path("soft.json");
    json(&cuntz(&["soften", p(&m), p(&x), "--out", p(&soft)]));
    let r = json(&cuntz(&["compare", p(&m), p(&soft), p(&x)]));
    assert_eq!(r["verdict"], "≤ only");
}

#[test]
fn emitted_goodearl_element_reloads() {
    let s = Sandbox::new();
    let t = s.file(
        "t.json",
        r#"{"kind":"target","step":{"partition":["0","1/2","1"],"values":["1/2","1"],"points":["1/2","1/2","1"]}}"#,
    );
    let e = s.path("e.json");
    json(&cuntz(&["realize", p(&t), "--stages", "2", "--out", p(&e)]));
    let r = json(&cuntz(&["goodearl", p(&e), "--eps", "1/8"]));
    assert!(r["dimension"].is_string());
    assert!(r["cutdown_dimension"].is_string());
}

#[test]
fn k0star_and_order_unit() {
    let s = Sandbox::new();
    let m = s.file("m.json", TWO_TRACES);
    let r = json(&cuntz(&["k0star", p(&m), "1/2,1"]));
    assert!(r.is_object());
    assert_eq!(
        json(&cuntz(&["order-unit", p(&m), "1/2,1"]))["order_unit"],
        true
    );
    assert_eq!(
        json(&cuntz(&["order-unit", p(&m), "0,1"]))["order_unit"],
        false
    );
    assert_eq!(code(&cuntz(&["order-unit", p(&m), "-1,1"])), 2);
}

#[test]
fn reports_are_deterministic() {
    let s = Sandbox::new();
    let m = s.file("m.json", TWO_TRACES);
    let run = || cuntz(&["check", p(&m), "--suite", "oracle-agreement", "--seed", "3"]).stdout;
    assert_eq!(run(), run());
    let other = cuntz(&["check", p(&m), "--suite", "order-axioms", "--seed", "3"]).stdout;
    assert_eq!(
        other,
        cuntz(&["check", p(&m), "--suite", "order-axioms", "--seed", "3"]).stdout
    );
}

#[test]
fn k0star_suites_on_a_three_trace_model() {
    let s = Sandbox::new();
    let m = s.file(
        "m.json",
        r#"{"kind":"wmodel","states":[["1","0"],["1","1"],["1","1/3"]],"unit":[1,0]}"#,
    );
    for suite in ["weak-unperforation", "archimedean"] {
        let r = json(&cuntz(&["check", p(&m), "--suite", suite, "--bound", "2"]));
        assert_eq!(r["pass"], true, "suite {suite}: {r}");
    }
}
