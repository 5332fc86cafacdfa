use std::path::PathBuf;
use std::process::{Command, Output};

use ghz_distill::osbp::PovmTriple;
use ghz_distill::protocol::exact_branch_probability;
use ghz_distill::PovmPair;
use ghz_distill_cli::json::parse_matrix;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghz-distill")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn classify_labels() {
    let g = run_json(&["classify", &path("ghz.json")]);
    assert_eq!(g["result"]["class"], "GHZClass");
    assert_eq!(g["command"], "classify");
    assert_eq!(g["input_label"], "GHZ");
    let w = run_json(&["classify", &path("w.json")]);
    assert_eq!(w["result"]["class"], "WClass");
    let p = run_json(&["classify", &path("product.json")]);
    assert_eq!(p["result"]["class"], "FullyProduct");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"amps\": [[1, 0]").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty() && !out.stderr.is_empty());

    std::fs::write(&bad, "{\"amps\": [[1, 0], [0, 0]]}").unwrap();
    assert_eq!(run(&["distill", bad.to_str().unwrap()]).status.code(), Some(2));

    let zeros = format!("{{\"amps\": [{}]}}", ["[0, 0]"; 8].join(","));
    std::fs::write(&bad, zeros).unwrap();
    assert_eq!(run(&["fidelity", bad.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["classify", "/nonexistent/state.json"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn unnormalized_input_warns() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    std::fs::write(&file, r#"{"amps": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]}"#).unwrap();
    let out = run(&["distill", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((f(&v["result"]["p_opt"]) - 1.0).abs() < 1e-9);
}

#[test]
fn distill_examples() {
    let g = run_json(&["distill", &path("ghz.json")]);
    assert!((f(&g["result"]["p_opt"]) - 1.0).abs() < 1e-9);
    let b = run_json(&["distill", &path("psi_b.json")]);
    assert!((f(&b["result"]["p_opt"]) - 0.4).abs() < 1e-9);
    for gamma in b["result"]["gamma"].as_array().unwrap() {
        assert!((f(gamma) - 0.4f64.sqrt()).abs() < 1e-6);
    }
    let w = run(&["distill", &path("w.json")]);
    assert_eq!(w.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&w.stderr).contains("GHZ not distillable from W class"));
    assert_eq!(run(&["simulate", &path("w.json")]).status.code(), Some(4));
    assert_eq!(run(&["audit", &path("product.json")]).status.code(), Some(4));
}

#[test]
fn povms_round_trip_through_json() {
    for name in ["ghz.json", "psi_b.json"] {
        let v = run_json(&["distill", &path(name)]);
        let povms = &v["result"]["povms"];
        let pair = |p: &str| {
            PovmPair::new(
                parse_matrix(&povms[p]["success"]).unwrap(),
                parse_matrix(&povms[p]["failure"]).unwrap(),
            )
        };
        let t = PovmTriple::new(pair("A"), pair("B"), pair("C"));
        let state = ghz_distill_cli::state_file::read(&data(name)).unwrap().state;
        let p = exact_branch_probability(&state, &t);
        assert!((p - f(&v["result"]["p_opt"])).abs() < 1e-8);
        assert!(t.pair(ghz_distill::Party::A).completeness_error() < 1e-10);
    }
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", &path("psi_b.json"), "--trials", "100000", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let rate = f(&v["result"]["success_rate"]);
    assert!((rate - 0.4).abs() <= 4.0 * (0.4f64 * 0.6 / 1e5).sqrt());
    assert!(f(&v["result"]["mean_success_fidelity"]) >= 1.0 - 1e-9);

    let g = run_json(&["simulate", &path("ghz.json"), "--trials", "10"]);
    assert_eq!(f(&g["result"]["success_rate"]), 1.0);
    assert_eq!(run(&["simulate", &path("ghz.json"), "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn audit_modes() {
    let r = run_json(&["audit", &path("ghz.json"), "--povms", "100", "--seed", "1"]);
    assert!(f(&r["result"]["min_slack"]) >= -1e-7);
    assert!(f(&r["result"]["max_probability_error"]) <= 1e-10);
    let d = run_json(&["audit", &path("psi_b.json"), "--diagonal-scan", "101"]);
    assert!((f(&d["result"]["argmin_x"]) - 0.5).abs() < 0.011);
    assert_eq!(d["result"]["table"].as_array().unwrap().len(), 101);
}

#[test]
fn fidelity_examples() {
    let g = run_json(&["fidelity", &path("ghz.json")]);
    assert!((f(&g["result"]["fidelity"]) - 1.0).abs() < 1e-10);
    assert_eq!(g["result"]["angles"].as_array().unwrap().len(), 9);
    let p = run_json(&["fidelity", &path("product.json")]);
    assert!((f(&p["result"]["fidelity"]) - 0.5).abs() < 1e-6);
    let w1 = run_json(&["fidelity", &path("w.json"), "--seed", "1"]);
    let w2 = run_json(&["fidelity", &path("w.json"), "--seed", "2"]);
    assert!((f(&w1["result"]["fidelity"]) - f(&w2["result"]["fidelity"])).abs() < 1e-8);
}

#[test]
fn output_is_deterministic_and_precise() {
    for cmd in ["classify", "distill", "fidelity"] {
        let a = run(&[cmd, &path("psi_b.json")]);
        let b = run(&[cmd, &path("psi_b.json")]);
        assert_eq!(a.stdout, b.stdout);
    }
    let text = String::from_utf8(run(&["distill", &path("psi_b.json")]).stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let p = v["result"]["p_opt"].to_string();
    let digits = p.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).count();
    assert!(digits >= 15, "{p}");
    let pretty = run(&["distill", &path("psi_b.json"), "--pretty"]);
    let pv: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(pv, v);
    let timed = run_json(&["classify", &path("ghz.json"), "--timings"]);
    assert!(timed["diagnostics"]["timings_ms"]["total"].as_f64().is_some());
}
