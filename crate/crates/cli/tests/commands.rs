use std::fs;
use std::path::{Path, PathBuf};

use mckay::{parse_model, run};
use serde_json::{json, Value};
use tempfile::TempDir;

const WP112: &str = r#"{"name": "WP(1,1,2)", "n": 2, "m": 3,
    "vertices": [[0,1],[1,2],[0,2]], "lambda": [[1,0],[0,1],[-1,-2]]}"#;
const Z3: &str = r#"{"name": "Z3", "n": 3, "m": 4,
    "vertices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]],
    "lambda": [[1,0,0],[0,1,0],[-1,-1,3],[0,0,-1]]}"#;
const NOT_QUASI_SL: &str = r#"{"n": 2, "m": 3,
    "vertices": [[0,1],[1,2],[0,2]], "lambda": [[1,0],[0,1],[-1,-3]]}"#;
const NON_PRIMITIVE: &str = r#"{"n": 2, "m": 3,
    "vertices": [[0,1],[1,2],[0,2]], "lambda": [[2,0],[0,1],[-1,-2]]}"#;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Output {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("JSON report")
    }
}

fn mckay(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("mckay").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn mckay_on_weighted_projective_plane() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "wp112.json", WP112);
    let o = mckay(&["mckay", p(&model), "--face", "0,2", "--weights", "1/2,1/2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = o.json();
    assert_eq!(r["pp_cr_before"], json!([1, 2, 1]));
    assert_eq!(r["pp_cr_after"], json!([1, 2, 1]));
    assert_eq!(r["lambda0"], json!([0, -1]));
    assert_eq!(r["verdict"], json!(true));
    assert!(r["wdelta"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == json!(true)));
}

#[test]
fn mckay_rejects_bad_specs() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "wp112.json", WP112);
    let m = p(&model);
    assert_eq!(
        mckay(&["mckay", m, "--face", "0,2", "--weights", "1,1"]).code,
        2
    );
    assert_eq!(
        mckay(&["mckay", m, "--face", "0,1", "--weights", "1/3,1/3"]).code,
        2
    );
    assert_eq!(
        mckay(&["mckay", m, "--face", "0,2", "--weights", "1/2"]).code,
        2
    );
    assert_eq!(
        mckay(&["mckay", m, "--face", "0,2", "--weights", "x,1"]).code,
        2
    );
    assert_eq!(mckay(&["mckay", m]).code, 2);
    // facet order on the command line does not matter
    assert_eq!(
        mckay(&["mckay", m, "--face", "2,0", "--weights", "1/2,1/2"]).code,
        0
    );
}

#[test]
fn validate_reports_violations() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", Z3);
    let o = mckay(&["validate", p(&good)]);
    assert_eq!(o.code, 0);
    assert_eq!(o.json()["quasi_sl"]["holds"], json!(true));

    let bad = write(&dir, "broken.json", NON_PRIMITIVE);
    let o = mckay(&["validate", p(&bad)]);
    assert_eq!(o.code, 2);
    let r = o.json();
    assert_eq!(r["valid"], json!(false));
    assert!(r["violations"][0].as_str().unwrap().contains("primitive"));

    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(mckay(&["validate", p(&garbage)]).code, 2);
    assert_eq!(mckay(&["validate", "/nonexistent/model.json"]).code, 2);
}

#[test]
fn betti_and_cr() {
    let dir = TempDir::new().unwrap();
    let z3 = write(&dir, "z3.json", Z3);
    let o = mckay(&["betti", p(&z3)]);
    assert_eq!(o.code, 0);
    let r = o.json();
    assert_eq!(r["pp"], json!([1, 1, 1, 1]));
    assert_eq!(r["pp_cr"], json!([1, 2, 2, 1]));
    assert_eq!(r["betti_cr"], json!([1, 0, 2, 0, 2, 0, 1]));

    let o = mckay(&["cr", p(&z3)]);
    assert_eq!(o.code, 0);
    let r = o.json();
    assert_eq!(r["routes_agree"], json!(true));
    for id in ["morestrat", "h_identity", "newpon", "newpon_-1", "gdecom"] {
        assert_eq!(r["identities"][id], json!(true), "{id}");
    }
    assert_eq!(r["sectors"].as_array().unwrap().len(), 3);
}

#[test]
fn non_quasi_sl_models() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "k3.json", NOT_QUASI_SL);
    let o = mckay(&["betti", p(&m)]);
    assert_eq!(o.code, 2);
    assert_eq!(o.json()["quasi_sl"]["witness"]["face"], json!([0, 2]));
    // sectors still lists rational ages
    let o = mckay(&["sectors", p(&m)]);
    assert_eq!(o.code, 0);
    let ages: Vec<Value> = o
        .json()
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["age"].clone())
        .collect();
    assert!(ages.contains(&json!("2/3")));
    assert!(ages.contains(&json!("4/3")));
}

#[test]
fn ehrhart_with_oracle() {
    let dir = TempDir::new().unwrap();
    let z3 = write(&dir, "z3.json", Z3);
    let o = mckay(&["ehrhart", p(&z3), "--face", "0,1,2", "--oracle"]);
    assert_eq!(o.code, 0);
    let r = o.json();
    assert_eq!(r["psi"], json!([1, 1, 1]));
    assert_eq!(r["order"], json!(3));
    assert_eq!(r["oracle_agrees"], json!(true));
    let o = mckay(&["ehrhart", p(&z3), "--oracle"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.json().as_array().unwrap().len(), 14);
    assert_eq!(mckay(&["ehrhart", p(&z3), "--face", "0,9"]).code, 2);
}

#[test]
fn blowup_writes_a_model() {
    let dir = TempDir::new().unwrap();
    let z3 = write(&dir, "z3.json", Z3);
    let out = dir.path().join("out.json");
    let o = mckay(&[
        "blowup",
        p(&z3),
        "--face",
        "0,1,2",
        "--weights",
        "1/3,1/3,1/3",
        "-o",
        p(&out),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let blown = parse_model(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(blown.m(), 5);
    assert!(blown.is_smooth());
    let o = mckay(&["betti", p(&out)]);
    assert_eq!(o.json()["pp_cr"], json!([1, 2, 2, 1]));
    // without -o the model goes to stdout
    let o = mckay(&[
        "blowup",
        p(&z3),
        "--face",
        "0,1,2",
        "--weights",
        "1/3,1/3,1/3",
    ]);
    assert_eq!(parse_model(&o.stdout).unwrap(), blown);
}

#[test]
fn big_integers_in_model_files() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "big.json",
        r#"{"n": 2, "m": 3, "vertices": [[0,1],[1,2],[0,2]],
            "lambda": [["1", 0], [0, 1], [-1, "-2"]]}"#,
    );
    let o = mckay(&["betti", p(&m)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json()["pp_cr"], json!([1, 2, 1]));
}

#[test]
fn fuzz_passes() {
    let o = mckay(&["fuzz", "--seed", "7", "--count", "20", "--n", "3"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let r = o.json();
    assert_eq!(r["all_passed"], json!(true));
    assert_eq!(r["models"].as_array().unwrap().len(), 20);
    assert_eq!(mckay(&["fuzz", "--n", "7"]).code, 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let z3 = write(&dir, "z3.json", Z3);
    for args in [
        vec!["cr", p(&z3)],
        vec!["sectors", p(&z3)],
        vec!["faces", p(&z3)],
        vec![
            "mckay",
            p(&z3),
            "--face",
            "0,1,2",
            "--weights",
            "1/3,1/3,1/3",
        ],
        vec!["fuzz", "--seed", "3", "--count", "5"],
    ] {
        let a = mckay(&args);
        let b = mckay(&args);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(mckay(&["frobnicate"]).code, 2);
    assert_eq!(mckay(&[]).code, 2);
    let o = mckay(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("mckay"));
}
