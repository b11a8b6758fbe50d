use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn coaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coaf"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const SQUARE: &str = r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]],"rays":[]}"#;
const BOX: &str = r#"{"dim":2,"vertices":[[0,0],[3,0],[0,2],[3,2]],"rays":[]}"#;
const TRIANGLE_BODY: &str = r#"{"cone":{"rays":[[1,0],[0,1]]},"complement":{"dim":2,"vertices":[[1,0],[0,1]],"rays":[[1,0],[0,1]]}}"#;

#[test]
fn volume_of_polytope_and_coconvex_body() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.json", BOX);
    let out = coaf(&["volume", &sq]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["volume"], "6");
    let tri = write(dir.path(), "tri.json", TRIANGLE_BODY);
    let out = coaf(&["volume", &tri, "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "volume\n1/2\n");
}

#[test]
fn mixed_volume_from_files_and_array() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", SQUARE);
    let b = write(dir.path(), "b.json", BOX);
    assert_eq!(json(&coaf(&["mixedvol", &a, &b]))["mixed_volume"], "5/2");
    let both = write(dir.path(), "both.json", &format!("[{SQUARE},{BOX}]"));
    assert_eq!(json(&coaf(&["mixedvol", &both]))["mixed_volume"], "5/2");
}

#[test]
fn volume_polynomial_and_forms() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(
        dir.path(),
        "fam.json",
        &format!(r#"{{"dim":2,"generators":[{SQUARE},{BOX}],"marked":[]}}"#),
    );
    let out = coaf(&["volpoly", &fam, "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "a1,a2,coeff\n2,0,1\n1,1,5\n0,2,6\n"
    );
    let f = json(&coaf(&["afform", &fam]));
    assert_eq!(
        f["bilinear"]["rows"],
        serde_json::json!([["1", "5/2"], ["5/2", "6"]])
    );
    assert_eq!(f["signature"]["pos"], 1);

    let cofam = write(
        dir.path(),
        "cofam.json",
        &format!(
            r#"{{"cone":{{"rays":[[1,0],[0,1]]}},"generators":[{TRIANGLE_BODY}],"marked":[]}}"#
        ),
    );
    let f = json(&coaf(&["co-afform", &cofam]));
    assert_eq!(f["quadratic"]["rows"], serde_json::json!([["1"]]));
    let p = json(&coaf(&["volpoly", &cofam]));
    assert_eq!(p["terms"][0]["coeff"], "1/2");
}

#[test]
fn signature_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"n":2,"rows":[["1","1"],["1","0"]]}"#,
    );
    let s = json(&coaf(&["signature", &f]));
    assert_eq!(
        (s["pos"].as_u64(), s["neg"].as_u64(), s["zero"].as_u64()),
        (Some(1), Some(1), Some(0))
    );
}

#[test]
fn lift_verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cofam = write(
        dir.path(),
        "cofam.json",
        &format!(
            r#"{{"cone":{{"rays":[[1,0],[0,1]]}},"generators":[{TRIANGLE_BODY}],"marked":[]}}"#
        ),
    );
    let out = coaf(&["lift-verify", &cofam]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let ids: Vec<&str> = r
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["identity"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["V", "Q", "signature"]);
    assert!(r.as_array().unwrap().iter().all(|x| x["status"] == "ok"));
}

#[test]
fn generated_family_feeds_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("fam.json");
    let out = coaf(&[
        "gen",
        "cofamily",
        "--dim",
        "3",
        "--n",
        "2",
        "--seed",
        "4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = coaf(&["co-afform", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["signature"]["neg"], 0);
    let again = coaf(&["gen", "cofamily", "--dim", "3", "--n", "2", "--seed", "4"]);
    assert_eq!(fs::read(&out_path).unwrap(), again.stdout);
}

#[test]
fn suite_is_deterministic_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = coaf(&["suite", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let strip = |p: &Path| {
        let mut v: Value = serde_json::from_slice(&fs::read(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&a), strip(&b));
    let v: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["config"]["n_trials"], 50);
    assert_eq!(v["properties"]["co_af"]["pass"], 50);
}

#[test]
fn suite_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"dim":3,"n_generators":2,"n_trials":3,"seed":11,"coordinate_bound":3,"suite":["co_af","lift_Q"]}"#,
    );
    let out = coaf(&["suite", "--config", &cfg, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "property,pass,fail\nco_af,3,0\nlift_Q,3,0\n"
    );
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"dim":2,"n_generators":2,"n_trials":0,"seed":1}"#,
    );
    assert_eq!(coaf(&["suite", "--config", &cfg]).status.code(), Some(2));
    assert_eq!(
        coaf(&["volume", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
    let garbage = write(dir.path(), "g.json", "{not json");
    assert_eq!(coaf(&["volume", &garbage]).status.code(), Some(2));
    let unbounded = write(
        dir.path(),
        "u.json",
        r#"{"dim":2,"vertices":[[0,0]],"rays":[[1,0]]}"#,
    );
    assert_eq!(coaf(&["volume", &unbounded]).status.code(), Some(2));
    let one = write(dir.path(), "one.json", SQUARE);
    assert_eq!(coaf(&["mixedvol", &one]).status.code(), Some(2));
    assert_eq!(
        coaf(&["suite", "--properties", "bogus"]).status.code(),
        Some(2)
    );
}
