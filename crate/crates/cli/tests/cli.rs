use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use hecke_core::GenericHeckeData;
use serde_json::{json, Value};
use tempfile::TempDir;

fn hecke(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).envs(env.iter().copied()).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gl2(dir: &Path) -> PathBuf {
    let p = dir.join("gl2.json");
    let (code, v) = hecke(&["build", "gl_n", "--n", "2", "--q", "3", "-o", s(&p)], &[]);
    assert_eq!(code, 0, "{v}");
    p
}

fn descriptor(j: &str, lambda: i64) -> Value {
    json!({ "chi": [1, 1], "j_set": [j], "v_dim": 1, "v_mats": { "w^2": [[lambda]] } })
}

#[test]
fn build_round_trips() {
    let dir = TempDir::new().unwrap();
    let p = gl2(dir.path());
    let text = fs::read_to_string(&p).unwrap();
    assert_eq!(GenericHeckeData::from_json_str(&text).unwrap().to_json_string(), text);
    let (code, v) = hecke(&["validate", "--data", s(&p)], &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["valid"], true);

    let q = dir.path().join("q.json");
    let (code, v) = hecke(&["quotient", "--data", s(&p), "--keep", "", "--subgroup", "1,1", "-o", s(&q)], &[]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["reflections"], json!([]));
    let text = fs::read_to_string(&q).unwrap();
    assert_eq!(GenericHeckeData::from_json_str(&text).unwrap().to_json_string(), text);
    assert_eq!(hecke(&["validate", "--data", s(&q)], &[]).0, 0);
}

#[test]
fn seed_from_environment() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("d.json");
    let (code, _) = hecke(&["build", "gl_n", "--n", "3", "--q", "4", "-o", s(&p)], &[("HECKE_SEED", "17")]);
    assert_eq!(code, 0);
    assert_eq!(hecke(&["validate", "--data", s(&p)], &[]).0, 0);
    let (code, v) = hecke(&["build", "gl_n", "--n", "2", "--q", "3"], &[("HECKE_SEED", "x")]);
    assert_eq!(code, 2);
    assert!(v["message"].as_str().unwrap().contains("HECKE_SEED"));
}

#[test]
fn ext_ss_examples() {
    let dir = TempDir::new().unwrap();
    let data = gl2(dir.path());
    let a = write(dir.path(), "a.json", &descriptor("s0", 1));
    let b = write(dir.path(), "b.json", &descriptor("s0", 2));
    let (code, v) = hecke(&["ext-ss", "--data", s(&data), "--m1", s(&a), "--m2", s(&a), "--breakdown", "--check"], &[]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["total"], 2);
    assert_eq!(v["payload"]["oracle"], 2);
    assert_eq!(v["payload"]["terms"].as_array().unwrap().len(), 2);
    let (code, v) = hecke(&["ext-ss", "--data", s(&data), "--m1", s(&a), "--m2", s(&b)], &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"], json!({ "total": 0 }));
    let (code, v) = hecke(&["oracle", "--data", s(&data), "--m1", s(&a), "--m2", s(&b), "--check"], &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"], json!({ "total": 0, "closed_form": 0 }));
}

#[test]
fn ext_aff_and_stabilizer() {
    let dir = TempDir::new().unwrap();
    let data = gl2(dir.path());
    let x = write(dir.path(), "x.json", &json!({ "chi": [1, 2], "j_set": [] }));
    let (code, v) = hecke(&["ext-aff", "--data", s(&data), "--xi1", s(&x), "--xi2", s(&x)], &[]);
    assert_eq!(code, 0, "{v}");
    let dim = v["payload"]["dim_ext1"].clone();
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
    let (code, v) = hecke(&["oracle", "--data", s(&data), "--m1", s(&x), "--m2", s(&x), "--aff-only", "--check"], &[]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["total"], dim);

    let t = write(dir.path(), "t.json", &json!({ "chi": [1, 1], "j_set": ["s0"] }));
    let (code, v) = hecke(&["stabilizer", "--data", s(&data), "--xi", s(&t)], &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["generators"], json!(["w^2"]));
}

#[test]
fn plan_output() {
    let dir = TempDir::new().unwrap();
    let t1 = write(dir.path(), "t1.json", &json!({ "p_set": [], "sigma_tag": "s", "delta_sigma": [0, 1], "q_set": [0] }));
    let t2 = write(dir.path(), "t2.json", &json!({ "p_set": [], "sigma_tag": "s", "delta_sigma": [0, 1], "q_set": [1] }));
    let (code, v) = hecke(&["plan", "--root", "A2", "--i", "1", "--t1", s(&t1), "--t2", s(&t2)], &[]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["outcome"], "Zero");
    assert_eq!(v["trace"].as_array().unwrap().len(), 4);
    let (code, v) = hecke(&["plan", "--root", "A2", "--i", "1", "--t1", s(&t1), "--t2", s(&t1)], &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"], json!({ "outcome": "SupersingularTarget", "ambient": [0, 1], "degree": 1 }));
    let cartan = write(dir.path(), "c.json", &json!({ "cartan": [[2, -2], [-2, 2]] }));
    assert_eq!(hecke(&["plan", "--root", s(&cartan), "--i", "1", "--t1", s(&t1), "--t2", s(&t2)], &[]).0, 2);
}

#[test]
fn h1_examples() {
    let dir = TempDir::new().unwrap();
    let triv3 = write(dir.path(), "a.json", &json!({ "p": 3, "mats": [[[1]]] }));
    assert_eq!(hecke(&["h1", "--group", "Z", "--action", s(&triv3)], &[]).1["payload"]["dim"], 1);
    assert_eq!(hecke(&["h1", "--group", "2", "--action", s(&triv3)], &[]).1["payload"]["dim"], 0);
    let triv2 = write(dir.path(), "b.json", &json!({ "p": 2, "mats": [[[1]], [[1]]] }));
    assert_eq!(hecke(&["h1", "--group", "2,2", "--action", s(&triv2)], &[]).1["payload"]["dim"], 2);
    assert_eq!(hecke(&["h1", "--group", "2,x", "--action", s(&triv2)], &[]).0, 2);
}

#[test]
fn error_exits() {
    let dir = TempDir::new().unwrap();
    let data = gl2(dir.path());
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"chi\": [1, 1],\n \"j_set\": [").unwrap();
    let (code, v) = hecke(&["ext-aff", "--data", s(&data), "--xi1", s(&bad), "--xi2", s(&bad)], &[]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert!(v["message"].as_str().unwrap().contains("line 2"));

    let mut d: Value = serde_json::from_str(&fs::read_to_string(&data).unwrap()).unwrap();
    d["coxeter"][0][1] = json!(3);
    let corrupt = write(dir.path(), "corrupt.json", &d);
    let (code, v) = hecke(&["validate", "--data", s(&corrupt)], &[]);
    assert_eq!(code, 2);
    assert!(!v["payload"]["violations"].as_array().unwrap().is_empty());

    let wrong = write(dir.path(), "w.json", &json!({ "chi": [1, 1], "j_set": ["s0"], "v_dim": 1, "v_mats": { "w": [[1]] } }));
    assert_eq!(hecke(&["ext-ss", "--data", s(&data), "--m1", s(&wrong), "--m2", s(&wrong)], &[]).0, 2);
}
