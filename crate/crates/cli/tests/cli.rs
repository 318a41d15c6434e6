use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const MUX: &str = "inputs x y z\ng1 = AND x z\ng2 = AND y ~z\ng3 = OR g1 g2\noutput g3\n";

fn hazard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hazard")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON document")
}

fn ok(args: &[&str]) -> Value {
    let out = hazard(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout_json(&out)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn check_multiplexer_all_methods() {
    let dir = tempfile::tempdir().unwrap();
    let mux = write(dir.path(), "mux.net", MUX);
    let doc = ok(&["check", &mux, "--method", "all"]);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["verdict"]["has_1_hazard"], true);
    assert_eq!(doc["verdict"]["has_0_hazard"], false);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert_eq!(r["witnesses"][0]["vector"], "11u");
        assert_eq!(r["witnesses"][0]["polarity"], "1");
    }
    assert_eq!(reports[2]["witnesses"][0]["missing_prime"], "xy");
    assert_eq!(doc["prime_counts"]["implicants"], 3);
    assert!(doc["timings_ms"]["total"].is_number());
}

#[test]
fn document_field_order_is_fixed() {
    let doc = hazard(&["check", "family:multiplexer"]);
    let text = String::from_utf8(doc.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("schema_version") < pos("tool"));
    assert!(pos("tool") < pos("input"));
    assert!(pos("input") < pos("stats"));
    assert!(pos("stats") < pos("reports"));
    let again = String::from_utf8(hazard(&["check", "family:multiplexer"]).stdout).unwrap();
    let strip = |s: &str| s.lines().filter(|l| !l.contains('.')).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&text), strip(&again));
}

#[test]
fn parity_is_hazard_free() {
    let doc = ok(&["check", "family:parity:4", "--method", "oracle", "--expect", "hazard-free"]);
    assert_eq!(doc["verdict"]["hazard_free"], true);
    assert_eq!(doc["expectation_met"], true);
}

#[test]
fn unmet_expectation_fails() {
    let out = hazard(&["check", "family:multiplexer", "--expect", "0-hazard"]);
    assert!(!out.status.success());
    assert_eq!(stdout_json(&out)["expectation_met"], false);
    assert_eq!(stderr_json(&out)["error"]["kind"], "ExpectationFailed");
    assert!(hazard(&["check", "family:multiplexer", "--expect", "1-hazard"]).status.success());
}

#[test]
fn oracle_rejects_large_arity() {
    let vars: Vec<String> = (1..=15).map(|i| format!("x{i}")).collect();
    let out = hazard(&["check", "--expr", &vars.join(" | "), "--method", "oracle"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(stderr_json(&out)["error"]["kind"], "ArityTooLarge");
}

#[test]
fn malformed_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.net", "inputs x\ng = AND x ~q\noutput g\n");
    let out = hazard(&["check", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "UnknownIdentifier");
    let out = hazard(&["check"]);
    assert_eq!(stderr_json(&out)["error"]["kind"], "Usage");
}

#[test]
fn synth_multiplexer_huffman() {
    let doc = ok(&["synth", "family:multiplexer", "--method", "huffman"]);
    let netlist = doc["netlist"].as_str().unwrap();
    assert!(netlist.starts_with("inputs x y z"));
    assert_eq!(netlist.matches("AND").count(), 3);
    assert_eq!(doc["verification"]["hazard_free"], true);
    assert_eq!(doc["stats"]["size"], 5);
}

#[test]
fn synth_round_trip_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p6.net");
    let out_s = out.display().to_string();
    let doc = ok(&["synth", "family:parity:6", "--method", "shannon", "--m", "2", "-o", &out_s]);
    let size = doc["stats"]["size"].as_u64().unwrap();
    assert!(size <= doc["metadata"]["gate_bound"].as_u64().unwrap());
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("p6.net.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["metadata"]["gate_count"], size);
    let checked = ok(&["check", &out_s, "--method", "all", "--expect", "hazard-free"]);
    assert_eq!(checked["stats"]["size"], size);
    assert_eq!(checked["agreement"], true);
}

#[test]
fn synth_constant_zero_table() {
    let dir = tempfile::tempdir().unwrap();
    let tt = write(dir.path(), "f.tt", "n=3\n00000000\n");
    let doc = ok(&["synth", &tt, "--method", "huffman"]);
    assert!(doc["netlist"].as_str().unwrap().contains("output 0"));
    assert_eq!(doc["stats"]["size"], 0);
}

#[test]
fn synth_from_truth_table_matches() {
    let dir = tempfile::tempdir().unwrap();
    let tt = write(dir.path(), "f.tt", "n=4\n0110100110010110\n");
    let net = dir.path().join("f.net");
    ok(&["synth", &tt, "-o", net.to_str().unwrap()]);
    let doc = ok(&["check", net.to_str().unwrap(), "--expect", "hazard-free"]);
    assert_eq!(doc["verdict"]["hazard_free"], true);
    let out = hazard(&["synth", &tt, "--method", "huffman", "--m", "2"]);
    assert_eq!(stderr_json(&out)["error"]["kind"], "Usage");
}

#[test]
fn show_formal_dnf() {
    let doc = ok(&["show", "(x|~z)&(y|z)", "--what", "dnf"]);
    assert_eq!(strings(&doc["result"]["terms"]), ["xy", "xz", "y~z", "z~z"]);
    let doc = ok(&["show", "--expr", "(x|~z)&(y|z)", "--what", "cnf"]);
    assert_eq!(doc["result"]["count"], 2);
}

#[test]
fn show_multiplexer_implicates_and_primes() {
    let dir = tempfile::tempdir().unwrap();
    let mux = write(dir.path(), "mux.net", MUX);
    let doc = ok(&["show", &mux, "--what", "implicates"]);
    assert_eq!(strings(&doc["result"]["clauses"]), ["xy", "x~z", "yz"]);
    let doc = ok(&["show", &mux, "--what", "primes"]);
    assert_eq!(strings(&doc["result"]["terms"]), ["xy", "xz", "y~z"]);
}

#[test]
fn show_dual_of_literal() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.net", "inputs x\noutput ~x\n");
    let doc = ok(&["show", &x, "--what", "dual"]);
    assert_eq!(doc["result"]["netlist"], "inputs x\noutput ~x\n");
}

#[test]
fn show_closure_monotone_and_derivative() {
    let doc = ok(&["show", "x&~y", "--what", "closure"]);
    assert_eq!(strings(&doc["result"]["prime_implicants"]), ["x"]);
    let doc = ok(&["show", "x&~y", "--what", "monotone"]);
    assert_eq!(doc["result"]["stats"]["is_monotone"], true);
    let doc = ok(&["show", "x&z | y&~z", "--what", "derivative", "--a", "111", "--x", "001"]);
    assert_eq!(doc["result"]["vector"], "11u");
    assert_eq!(doc["result"]["function"], 0);
    assert_eq!(doc["result"]["circuit"], 1);
    let out = hazard(&["show", "x&y", "--what", "derivative", "--a", "1"]);
    assert_eq!(stderr_json(&out)["error"]["kind"], "Usage");
}

#[test]
fn gap_reports() {
    let doc = ok(&["gap", "family:exact_pm:3"]);
    let r = &doc["report"];
    assert_eq!(r["hazard_free_huffman"]["prime_implicants"], 6);
    assert_eq!(r["hazard_free_huffman"]["literal_count"], 54);
    assert_eq!(r["unrestricted"]["size"], 53);
    let doc = ok(&["gap", "family:exact_pm:2"]);
    assert_eq!(doc["report"]["hazard_free_huffman"]["prime_implicants"], 2);
    let doc = ok(&["gap", "family:multiplexer"]);
    assert_eq!(doc["report"]["unrestricted"]["size"], 3);
    assert_eq!(doc["report"]["hazard_free_huffman"]["stats"]["size"], 5);
}

#[test]
fn selftest_passes() {
    let doc = ok(&["selftest", "--seed", "7", "--count", "50"]);
    assert_eq!(doc["passed"], doc["total"]);
    assert_eq!(doc["seed"], 7);
}
