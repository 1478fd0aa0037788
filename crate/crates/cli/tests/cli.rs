use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hcompact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcompact"))
        .args(args)
        .output()
        .expect("spawn")
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn write(p: &Path, v: &Value) {
    fs::write(p, v.to_string()).unwrap();
}

fn path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn build_closure_descend() {
    let dir = tempfile::tempdir().unwrap();
    let ex = path(&dir, "ex.json");
    let out = hcompact(&["build-example", "--n", "1", "--k", "1", "--out", &ex]);
    assert!(out.status.success());
    assert_eq!(read(Path::new(&ex))["rep"]["n"], 1);

    let out = hcompact(&["closure", "--in", &ex]);
    assert!(out.status.success());
    let closure: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(closure["dim"], 5);

    let out = hcompact(&["descend", "--in", &ex]);
    assert!(out.status.success());
    let res: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(res["tautological"], false);
    assert_eq!(res["complement_basis"].as_array().unwrap().len(), 3);
}

#[test]
fn closure_of_bare_generators() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(&dir, "g.json");
    let e12 = serde_json::json!({"rows": 3, "cols": 3, "entries": [["0","1","0"],["0","0","0"],["0","0","0"]]});
    let e23 = serde_json::json!({"rows": 3, "cols": 3, "entries": [["0","0","0"],["0","0","1/1"],["0","0","0"]]});
    write(
        Path::new(&g),
        &serde_json::json!({ "generators": [e12, e23] }),
    );
    let out = hcompact(&["closure", "--in", &g]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["filtration_profile"], serde_json::json!([3, 1]));
}

#[test]
fn invariant_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    let m = |d: &str| serde_json::json!({"n": 1, "M": {"rows": 2, "cols": 2, "entries": [[d, "1/2"], ["-1/2", d]]}});
    write(Path::new(&a), &m("1"));
    write(Path::new(&b), &m("2"));

    let out = hcompact(&["invariant", "--in", &b]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariant"], serde_json::json!(["1", "0", "4"]));
    assert_eq!(v["polynomial"], "x^2 + 4");

    let out = hcompact(&["certify", "--left", &a, "--right", &b]);
    assert_eq!(out.status.code(), Some(0));
    let cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], "inequivalent");

    let out = hcompact(&["certify", "--left", &a, "--right", &a]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn taut_from_matrix_realizes_the_formula() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(&dir, "m.json");
    // bare matrix input is accepted too
    write(
        Path::new(&a),
        &serde_json::json!({"rows": 2, "cols": 2, "entries": [["0", "1"], ["0", "0"]]}),
    );
    let out = hcompact(&["taut-from-matrix", "--in", &a]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["algebra"]["basis"].as_array().unwrap().len(), 4);
    assert_eq!(v["rep"]["X"][1]["entries"][1][3], "1");
}

#[test]
fn certify_family_writes_replayable_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(&dir, "fam.json");
    let out = hcompact(&[
        "certify-family",
        "--n",
        "1",
        "--labels",
        "1,2,3,4,5",
        "--out",
        &f,
    ]);
    assert!(out.status.success());
    let v = read(Path::new(&f));
    assert_eq!(v["certificates"].as_array().unwrap().len(), 10);
    let out = hcompact(&["certify-family", "--n", "2", "--count", "2"]);
    assert!(out.status.success());
    let out = hcompact(&["certify-family", "--n", "1", "--labels", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hcompact(&["certify-family", "--n", "1", "--labels", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_uses_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = path(&dir, "r1.json");
    let r2 = path(&dir, "r2.json");
    let args = |r: &str| {
        vec![
            "verify".to_string(),
            "--suite".into(),
            "dimension-bounds,descent-taut,ht-remark".into(),
            "--n-range".into(),
            "1..3".into(),
            "--seed".into(),
            "5".into(),
            "--report".into(),
            r.into(),
        ]
    };
    let run = |r: &str| {
        let a = args(r);
        hcompact(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert!(run(&r1).status.success());
    assert!(run(&r2).status.success());
    assert_eq!(fs::read(&r1).unwrap(), fs::read(&r2).unwrap());
    let v = read(Path::new(&r1));
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);
    assert_eq!(v["reports"][0]["check"], "dim-bounds");
    assert_eq!(
        v["reports"][0]["witness"]["dims"],
        serde_json::json!([4, 5])
    );

    let out = hcompact(&["verify", "--suite", "no-such-check", "--n-range", "1..1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(&dir, "bad.json");
    // M − Mᵗ = −Ω
    write(
        Path::new(&bad),
        &serde_json::json!({"rows": 2, "cols": 2, "entries": [["0", "0"], ["1", "0"]]}),
    );
    assert_eq!(
        hcompact(&["invariant", "--in", &bad]).status.code(),
        Some(2)
    );
    assert_eq!(
        hcompact(&["build-example", "--n", "1", "--k", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hcompact(&["descend", "--in", "/nonexistent"]).status.code(),
        Some(2)
    );
    assert_eq!(hcompact(&["frobnicate"]).status.code(), Some(2));
}
