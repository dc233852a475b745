use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasespace")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("phasespace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn star_of_coordinates() {
    assert_eq!(stdout(&["star", "q", "p"]), "q*p + (1/2)*i*hbar\n");
}

#[test]
fn bracket_of_coordinates() {
    assert_eq!(stdout(&["bracket", "q", "p"]), "i*hbar\n");
}

#[test]
fn ground_state_energy() {
    assert_eq!(stdout(&["expect", "--state", "fock:0", "--op", "(Q^2+P^2)/2"]), "0.5\n");
}

#[test]
fn dispersions() {
    assert_eq!(stdout(&["dispersion", "--state", "fock:0", "--op", "Q"]), "0.5\n");
    assert_eq!(stdout(&["dispersion", "--state", "fock:2", "--op", "(Q^2+P^2)/2"]), "0\n");
    assert_eq!(stdout(&["dispersion", "--state", "mix:0.5:0,0.5:1", "--op", "(Q^2+P^2)/2"]), "0.25\n");
}

#[test]
fn vn_demo_prints_the_correction() {
    let out = stdout(&["vn-demo", "--hbar", "1"]);
    assert!(out.lines().any(|l| l == "tilde(H^2) = H^2 - 1/4"), "{out}");
    assert!(out.contains("assumption I fails"));
    let out = stdout(&["vn-demo", "--hbar", "2"]);
    assert!(out.lines().any(|l| l == "tilde(H^2) = H^2 - 1"), "{out}");
}

#[test]
fn symbolic_round_trips() {
    assert_eq!(stdout(&["dequantize", "(Q^2+P^2)/2"]), "(1/2)*q^2 + (1/2)*p^2\n");
    assert_eq!(stdout(&["quantize", "q*p"]), "Q*P - (1/2)*i*hbar\n");
    assert_eq!(stdout(&["normal-form", "P*Q"]), "Q*P - i*hbar\n");
    assert_eq!(stdout(&["dequantize", "-Q^2"]), "-q^2\n");
}

#[test]
fn gap_report() {
    let doc = json(&["gap", "--op", "(Q^2+P^2)/2", "--f", "x^2", "--at", "-1,0.5"]);
    assert_eq!(doc["command"], "gap");
    assert_eq!(doc["result"]["gap"]["text"], "-(1/4)*hbar^2");
    assert_eq!(doc["result"]["gap_at_point"][0], -0.25);
    let linear = json(&["gap", "--op", "Q^3*P", "--f", "2*x - 7"]);
    assert_eq!(linear["result"]["gap"]["text"], "0");
}

#[test]
fn hv_report() {
    let doc = json(&["hv", "--point", "0.3,-1", "--op", "(Q^2+P^2)/2"]);
    let r = &doc["result"];
    assert_eq!(r["aprime_reading"], 0.0);
    assert_eq!(r["assumption_i_reading"], -0.25);
    assert_eq!(r["negative_reading"], true);
    let back: phasespace::HvDispersionReport = serde_json::from_value(r.clone()).unwrap();
    assert_eq!(back.gap_polynomial.to_string(), "-(1/4)*hbar^2");
}

#[test]
fn json_envelope() {
    let doc = json(&["--hbar", "1/2", "dequantize", "Q*P"]);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "hbar", "result", "diagnostics"]);
    assert_eq!(doc["hbar"], "1/2");
    assert_eq!(doc["result"]["text"], "q*p + (1/2)*i*hbar");
}

#[test]
fn wigner_csv() {
    let path = scratch("w1.csv");
    let out = stdout(&["wigner", "--state", "fock:1", "--grid", "-6:6:121,-6:6:121", "--out", path.to_str().unwrap()]);
    assert!(out.starts_with("wrote 14641 samples"));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,p,w"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 121 * 121);
    let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert!((origin[2] + 1.0 / std::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["star", "q^2*p", "p^3 - q"],
        vec!["--json", "hv", "--point", "1.25,-0.5", "--op", "Q^2*P + P*Q^2", "--f", "x^3"],
        vec!["expect", "--state", "mix:0.25:0,0.75:3", "--op", "Q^4"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn exit_codes() {
    // parse error
    let out = run(&["star", "q*P", "p"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 2"));
    // usage errors
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["expect", "--state", "fock:x", "--op", "Q"]).status.code(), Some(1));
    assert_eq!(run(&["--hbar", "1/0", "vn-demo"]).status.code(), Some(1));
    // help is not an error
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // non-Hermitian operator: imaginary residue in the expectation
    let out = run(&["expect", "--state", "fock:0", "--op", "Q*P"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("imaginary residue"));
}
