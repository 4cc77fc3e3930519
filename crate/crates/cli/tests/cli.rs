//! End-to-end runs of the binary on the shipped corpus.
//!
//! Golden files live in `tests/golden`; run with `UPDATE_GOLDEN=1` to
//! rewrite them after an intended output change.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> (Value, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_poisson-deform"))
        .args(args)
        .env_remove("POISSON_DEFORM_MAX_DEGREE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (value, out.status.code().unwrap())
}

fn run_file(args: &[&str], file: &str) -> (Value, i32) {
    let path = corpus(file);
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["-f", path.to_str().unwrap()]);
    run(&all, None)
}

const GOLDEN: &[(&str, &str)] = &[
    ("milnor", "a1.json"),
    ("milnor", "a4.json"),
    ("milnor", "fermat3.json"),
    ("milnor", "d4.json"),
    ("h2", "a4.json"),
    ("h2", "fermat3.json"),
    ("schouten", "schouten.json"),
    ("delta", "schouten.json"),
    ("deform build", "a4_defo.json"),
    ("deform verify", "a4_defo.json"),
    ("deform normalize", "a4_gauged.json"),
    ("deform casimir", "a4_defo.json"),
    ("deform euler-gauge", "fermat3_euler.json"),
    ("surface h2", "fermat5.json"),
    ("surface deform", "fermat5_surface.json"),
    ("surface verify", "fermat5_surface.json"),
    ("surface rigidity", "a4.json"),
    ("surface rigidity", "fermat3.json"),
    ("surface rigidity", "fermat5.json"),
    ("plane h2dim", "plane_xy.json"),
    ("plane h2dim", "plane_cusp.json"),
    ("check", "d4.json"),
    ("batch", "batch.json"),
];

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut mismatches = Vec::new();
    for (command, file) in GOLDEN {
        let args: Vec<&str> = command.split(' ').collect();
        let (value, code) = run_file(&args, file);
        assert_eq!(code, 0, "{command} {file}: {value}");
        let name = format!("{}__{}", command.replace(' ', "_"), file);
        let path = dir.join(&name);
        let text = serde_json::to_string_pretty(&value).unwrap() + "\n";
        if update {
            std::fs::write(&path, text).unwrap();
        } else {
            let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {name}"));
            if expected != text {
                mismatches.push(name);
            }
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn documented_examples() {
    let (v, _) = run_file(&["milnor"], "fermat3.json");
    assert_eq!(v["mu"], 8);
    assert_eq!(
        v["basis"],
        serde_json::json!(["1", "x", "y", "z", "x*y", "x*z", "y*z", "x*y*z"])
    );
    assert_eq!(v["context"]["e_phi"], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7]));

    let (v, _) = run_file(&["deform", "verify"], "a4_defo.json");
    assert_eq!(v["valid"], true);
    assert_eq!(v["defects"], serde_json::json!(["0", "0", "0"]));

    let (v, _) = run_file(&["surface", "rigidity"], "a4.json");
    assert_eq!(v["verdict"], "Rigid");

    let (v, _) = run_file(&["plane", "h2dim"], "plane_cusp.json");
    assert_eq!((v["dim_first"].as_u64(), v["dim_second"].as_u64()), (Some(0), Some(2)));

    // [x grad y, grad z] is the constant trivector 1
    let (v, _) = run_file(&["schouten"], "schouten.json");
    assert_eq!(v["result"], serde_json::json!({"degree": 3, "parts": ["1"]}));
}

#[test]
fn build_then_verify_is_valid() {
    for (file, order) in [("a4_defo.json", "3"), ("fermat3_euler.json", "4"), ("d4.json", "2")] {
        let (built, code) = run_file(&["deform", "build", "--order", order], file);
        assert_eq!(code, 0);
        let (v, code) = run(&["deform", "verify"], Some(&built.to_string()));
        assert_eq!(code, 0);
        assert_eq!(v["valid"], true, "{file}");
    }
}

#[test]
fn gauge_then_normalize_recovers_table() {
    let (v, _) = run_file(&["deform", "normalize"], "a4_gauged.json");
    let spec: Value = serde_json::from_str(&std::fs::read_to_string(corpus("a4_gauged.json")).unwrap()).unwrap();
    assert_eq!(v["coefficients"]["cbar"], spec["coefficients"]["cbar"]);
    // the normalize output rebuilds the same deformation
    let (gauged, _) = run_file(&["deform", "gauge"], "a4_gauged.json");
    let (rebuilt, _) = run(&["deform", "gauge"], Some(&v.to_string()));
    assert_eq!(rebuilt["deformation"], gauged["deformation"]);
}

#[test]
fn extension_stays_valid() {
    let (built, _) = run_file(&["deform", "build", "--order", "2"], "a4_defo.json");
    let (ext, code) = run(&["deform", "extend"], Some(&built.to_string()));
    assert_eq!(code, 0);
    assert_eq!(ext["order"], 3);
    let (v, _) = run(&["deform", "verify"], Some(&ext.to_string()));
    assert_eq!(v["valid"], true);
}

#[test]
fn surface_pipeline() {
    let (built, _) = run_file(&["surface", "deform"], "fermat5_surface.json");
    let (v, _) = run(&["surface", "verify"], Some(&built.to_string()));
    assert_eq!(v["valid"], true);
    let (n, code) = run(&["surface", "normalize"], Some(&built.to_string()));
    assert_eq!(code, 0);
    assert_eq!(n["alpha"], built["alpha"]);
}

#[test]
fn output_is_deterministic() {
    let a = run_file(&["check", "--seed", "11"], "fermat3.json");
    let b = run_file(&["check", "--seed", "11"], "fermat3.json");
    assert_eq!(a, b);
    assert_eq!(a.0["seed"], 11);
}

#[test]
fn error_codes() {
    let cases = [
        (r#"{"weights":[1,1,1],"phi":"x^2+"}"#, vec!["milnor"], 4, "Syntax"),
        (r#"{"weights":[1,1,1],"phi":"x^2+y^2"}"#, vec!["milnor"], 5, "NotIsolatedSingularity"),
        (r#"{"weights":[1,1,1],"phi":"x^2+y"}"#, vec!["milnor"], 5, "NotHomogeneous"),
        (r#"{"weights":[1,1,1]"#, vec!["milnor"], 4, "Json"),
        (r#"{"weights":[1,1,1],"phi":"x^2+y^2+z^2"}"#, vec!["deform", "build"], 4, "Input"),
        (r#"{"weights":[1,1],"phi":"x^2"}"#, vec!["plane", "h2dim"], 5, "NotSquareFree"),
        (
            r#"{"weights":[5,5,2],"phi":"x^2+y^2+z^5","order":1,"coefficients":{"cbar":[{"k":1,"r":9,"value":"1"}]}}"#,
            vec!["deform", "build"],
            5,
            "IndexOutOfRange",
        ),
    ];
    for (input, args, code, kind) in cases {
        let (v, c) = run(&args, Some(input));
        assert_eq!(c, code, "{input}: {v}");
        assert_eq!(v["error"]["kind"], kind, "{input}");
    }
    let (v, c) = run(&["milnor", "-f", "/nonexistent/spec.json"], None);
    assert_eq!((c, v["error"]["kind"].as_str()), (3, Some("Io")));
}

#[test]
fn degree_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_poisson-deform"))
        .args(["deform", "build", "-f", corpus("fermat3_euler.json").to_str().unwrap()])
        .env("POISSON_DEFORM_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(7));
}
