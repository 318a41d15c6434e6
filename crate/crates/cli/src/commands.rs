use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use hazard_core::cubes::write_dnf;
use hazard_core::families::{gap_report, FamilySpec};
use hazard_core::golden::{golden_suite, randomized_suite};
use hazard_core::hazard::{detect_oracle, detect_prime_witness, detect_structural, HazardReport};
use hazard_core::netlist::write_netlist;
use hazard_core::primes::{prime_implicants_qmc, prime_implicates};
use hazard_core::produce::{formal_cnf_capped, formal_dnf_capped};
use hazard_core::synthesis::{
    synthesize_shannon_with_metadata, synthesize_with_budget, SynthesisMethod,
};
use hazard_core::ternary::{hazard_derivative_circuit, hazard_derivative_function, unstable_shift};
use hazard_core::{Circuit, Error, TruthTable};
use serde_json::{json, Map, Value};

use crate::input::{load, Input};
use crate::{tool, CheckMethod, Expect, Failure, InputArgs, Outcome, SynthMethod, What, SCHEMA_VERSION};

/// Produced sets larger than this are reported as absent.
const PRODUCED_SET_REPORT_CAP: usize = 100_000;
/// Prime counts are reported up to this arity.
const PRIME_COUNT_MAX_ARITY: usize = 12;

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn header(command: &str, descriptor: &Value) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("tool".into(), tool());
    doc.insert("command".into(), json!(command));
    doc.insert("input".into(), descriptor.clone());
    doc
}

fn load_args(args: &InputArgs) -> Result<Input, Failure> {
    load(args.input.as_deref(), args.expr.as_deref())
}

fn produced_sizes(c: &Circuit) -> Value {
    let size = |r: Result<usize, Error>| match r {
        Ok(n) => json!(n),
        Err(_) => Value::Null,
    };
    json!({
        "cap": PRODUCED_SET_REPORT_CAP,
        "dnf_terms": size(formal_dnf_capped(c, PRODUCED_SET_REPORT_CAP).map(|s| s.len())),
        "cnf_clauses": size(formal_cnf_capped(c, PRODUCED_SET_REPORT_CAP).map(|s| s.len())),
    })
}

fn prime_counts(f: Option<&TruthTable>) -> Value {
    match f {
        Some(f) if f.arity() <= PRIME_COUNT_MAX_ARITY => json!({
            "implicants": prime_implicants_qmc(f).len(),
            "implicates": prime_implicates(f).len(),
        }),
        _ => Value::Null,
    }
}

fn verdict(r: &HazardReport) -> Value {
    json!({
        "hazard_free": r.is_hazard_free(),
        "has_0_hazard": r.has_0_hazard,
        "has_1_hazard": r.has_1_hazard,
    })
}

fn expectation_met(r: &HazardReport, e: Expect) -> bool {
    match e {
        Expect::HazardFree => r.is_hazard_free(),
        Expect::Hazard => !r.is_hazard_free(),
        Expect::ZeroHazard => r.has_0_hazard,
        Expect::OneHazard => r.has_1_hazard,
    }
}

fn run_detector(c: &Circuit, m: CheckMethod) -> Result<HazardReport, Error> {
    match m {
        CheckMethod::Oracle => detect_oracle(c),
        CheckMethod::PrimeWitness => detect_prime_witness(c),
        CheckMethod::Structural | CheckMethod::All => detect_structural(c),
    }
}

fn method_name(m: CheckMethod) -> &'static str {
    match m {
        CheckMethod::Oracle => "oracle",
        CheckMethod::PrimeWitness => "prime-witness",
        CheckMethod::Structural => "structural",
        CheckMethod::All => "all",
    }
}

/// With `all`, a detector whose bounds the input exceeds is skipped and
/// recorded; the remaining detectors must agree.
pub fn check(args: &InputArgs, method: CheckMethod, expect: Option<Expect>) -> Result<Outcome, Failure> {
    let total = Instant::now();
    let input = load_args(args)?;
    let c = input.circuit()?;
    let methods = match method {
        CheckMethod::All => vec![CheckMethod::Oracle, CheckMethod::PrimeWitness, CheckMethod::Structural],
        m => vec![m],
    };
    let mut timings = Map::new();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for m in methods {
        let start = Instant::now();
        match run_detector(c, m) {
            Ok(r) => reports.push(r),
            Err(e @ (Error::ArityTooLarge { .. } | Error::ProducedSetOverflow { .. }))
                if method == CheckMethod::All =>
            {
                skipped.push(json!({ "method": method_name(m), "reason": e.to_string() }));
            }
            Err(e) => return Err(e.into()),
        }
        timings.insert(method_name(m).into(), json!(ms(start)));
    }
    let Some(first) = reports.first() else {
        return Err(Failure::new("NoApplicableDetector", "every detector exceeded its bounds", 1));
    };

    let mut failure = None;
    let agree = reports.iter().all(|r| r.same_verdict(first));
    let witness_sets: Vec<_> = reports
        .iter()
        .filter(|r| r.method.name() != "oracle")
        .map(|r| r.witness_set())
        .collect();
    let witnesses_agree = witness_sets.windows(2).all(|w| w[0] == w[1]);
    if !(agree && witnesses_agree) {
        failure = Some(Failure::new("DetectorDivergence", "detectors disagree on this circuit", 4));
    }

    let start = Instant::now();
    let f = c.truth_table().ok();
    let produced = produced_sizes(c);
    let primes = prime_counts(f.as_ref());
    timings.insert("sets".into(), json!(ms(start)));
    timings.insert("total".into(), json!(ms(total)));

    let mut doc = header("check", &input.descriptor);
    doc.insert("stats".into(), json!(c.stats()));
    doc.insert("verdict".into(), verdict(first));
    if method == CheckMethod::All {
        doc.insert("agreement".into(), json!(agree && witnesses_agree));
        doc.insert("skipped".into(), Value::Array(skipped));
    }
    if let Some(e) = expect {
        let met = expectation_met(first, e);
        doc.insert("expectation_met".into(), json!(met));
        if !met && failure.is_none() {
            failure = Some(Failure::new("ExpectationFailed", "verdict differs from --expect", 3));
        }
    }
    doc.insert("produced_sets".into(), produced);
    doc.insert("prime_counts".into(), primes);
    doc.insert("reports".into(), json!(reports));
    doc.insert("timings_ms".into(), Value::Object(timings));
    Ok(Outcome { document: Value::Object(doc), failure })
}

/// Writes `contents` to `path` through a temporary file in the same directory.
fn write_atomically(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn synth(
    args: &InputArgs,
    method: SynthMethod,
    m: Option<usize>,
    output: Option<&Path>,
    budget: usize,
) -> Result<Outcome, Failure> {
    let total = Instant::now();
    let input = load_args(args)?;
    let f = input.function()?;
    let start = Instant::now();
    let synthesis = match method {
        SynthMethod::Huffman if m.is_some() => {
            return Err(Failure::usage("--m applies only to the shannon method"))
        }
        SynthMethod::Huffman => synthesize_with_budget(&f, SynthesisMethod::HuffmanDnf, budget)?,
        SynthMethod::Shannon => {
            let s = synthesize_shannon_with_metadata(&f, m)?;
            if s.metadata.gate_count > budget {
                return Err(Error::GateBudgetExceeded { budget }.into());
            }
            s
        }
    };
    let synth_ms = ms(start);
    let circuit = match input.names() {
        Some(names) => synthesis.circuit.with_names(names)?,
        None => synthesis.circuit,
    };

    let start = Instant::now();
    let report = if circuit.arity() <= hazard_core::ternary::MAX_ENUM_ARITY {
        detect_oracle(&circuit)?
    } else {
        detect_prime_witness(&circuit)?
    };
    if circuit.truth_table()? != f {
        return Err(Failure::new("VerificationFailed", "synthesized circuit computes a different function", 1));
    }
    if !report.is_hazard_free() {
        return Err(Failure::new("VerificationFailed", "synthesized circuit has a hazard", 1));
    }
    let verify_ms = ms(start);

    let netlist = write_netlist(&circuit);
    let metadata = json!(synthesis.metadata);
    let mut doc = header("synth", &input.descriptor);
    doc.insert("stats".into(), json!(circuit.stats()));
    doc.insert("metadata".into(), metadata.clone());
    doc.insert(
        "verification".into(),
        json!({ "method": report.method.name(), "hazard_free": true, "function_matches": true }),
    );
    match output {
        Some(path) => {
            write_atomically(path, &netlist)?;
            let meta = json!({
                "schema_version": SCHEMA_VERSION,
                "tool": tool(),
                "input": input.descriptor,
                "stats": circuit.stats(),
                "metadata": metadata,
            });
            let meta_path = sidecar(path);
            write_atomically(&meta_path, &serde_json::to_string_pretty(&meta).expect("serializable"))?;
            doc.insert(
                "output".into(),
                json!({ "netlist": path.display().to_string(), "metadata": meta_path.display().to_string() }),
            );
        }
        None => {
            doc.insert("netlist".into(), json!(netlist));
        }
    }
    doc.insert(
        "timings_ms".into(),
        json!({ "synthesis": synth_ms, "verification": verify_ms, "total": ms(total) }),
    );
    Ok(Outcome { document: Value::Object(doc), failure: None })
}

fn parse_bits(flag: &str, text: Option<&str>, n: usize) -> Result<Vec<bool>, Failure> {
    let text = text.ok_or_else(|| Failure::usage(format!("--what derivative needs --{flag}")))?;
    let bits: Option<Vec<bool>> = text
        .chars()
        .map(|ch| match ch {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect();
    match bits {
        Some(b) if b.len() == n => Ok(b),
        _ => Err(Failure::usage(format!("--{flag} must be {n} characters over 0 and 1"))),
    }
}

fn names_or_default(input: &Input, n: usize) -> Vec<String> {
    input.names().unwrap_or_else(|| hazard_core::circuit::default_names(n))
}

pub fn show(args: &InputArgs, what: What, a: Option<&str>, x: Option<&str>) -> Result<Outcome, Failure> {
    let total = Instant::now();
    let input = load_args(args)?;
    let (name, result) = match what {
        What::Dnf => {
            let c = input.circuit()?;
            let set = formal_dnf_capped(c, PRODUCED_SET_REPORT_CAP)?;
            let terms: Vec<String> = set.iter().map(|t| t.to_text(c.names())).collect();
            ("dnf", json!({ "count": terms.len(), "terms": terms }))
        }
        What::Cnf => {
            let c = input.circuit()?;
            let set = formal_cnf_capped(c, PRODUCED_SET_REPORT_CAP)?;
            let clauses: Vec<String> = set.iter().map(|k| k.to_text(c.names())).collect();
            ("cnf", json!({ "count": clauses.len(), "clauses": clauses }))
        }
        What::Primes => {
            let f = input.function()?;
            let names = names_or_default(&input, f.arity());
            let terms: Vec<String> = prime_implicants_qmc(&f).iter().map(|t| t.to_text(&names)).collect();
            ("primes", json!({ "count": terms.len(), "terms": terms }))
        }
        What::Implicates => {
            let f = input.function()?;
            let names = names_or_default(&input, f.arity());
            let clauses: Vec<String> = prime_implicates(&f).iter().map(|k| k.to_text(&names)).collect();
            ("implicates", json!({ "count": clauses.len(), "clauses": clauses }))
        }
        What::Closure => {
            let f = input.function()?;
            let up = f.upwards_closure();
            let names = names_or_default(&input, f.arity());
            let primes = prime_implicants_qmc(&up);
            let terms: Vec<String> = primes.iter().map(|t| t.to_text(&names)).collect();
            (
                "closure",
                json!({ "truth_table": up.to_tt(), "prime_implicants": terms, "dnf": write_dnf(up.arity(), &primes) }),
            )
        }
        What::Dual => {
            let d = input.circuit()?.dual();
            ("dual", json!({ "stats": d.stats(), "netlist": write_netlist(&d) }))
        }
        What::Monotone => {
            let mv = input.circuit()?.monotone_version();
            ("monotone", json!({ "stats": mv.stats(), "netlist": write_netlist(&mv) }))
        }
        What::Derivative => {
            let f = input.function()?;
            let n = f.arity();
            let (a, x) = (parse_bits("a", a, n)?, parse_bits("x", x, n)?);
            let function = hazard_derivative_function(&f, &a, &x)?;
            let circuit = match input.circuit() {
                Ok(c) => json!(hazard_derivative_circuit(c, &a, &x)?),
                Err(_) => Value::Null,
            };
            (
                "derivative",
                json!({
                    "vector": unstable_shift(&a, &x).to_string(),
                    "function": u8::from(function),
                    "circuit": circuit.as_bool().map(u8::from),
                }),
            )
        }
    };
    let mut doc = header("show", &input.descriptor);
    doc.insert("what".into(), json!(name));
    doc.insert("result".into(), result);
    doc.insert("timings_ms".into(), json!({ "total": ms(total) }));
    Ok(Outcome { document: Value::Object(doc), failure: None })
}

pub fn gap(family: &str) -> Result<Outcome, Failure> {
    let total = Instant::now();
    let spec: FamilySpec = family.parse()?;
    let report = gap_report(&spec)?;
    let mut doc = header("gap", &json!({ "kind": "family", "spec": spec.to_string() }));
    doc.insert("report".into(), json!(report));
    doc.insert("timings_ms".into(), json!({ "total": ms(total) }));
    Ok(Outcome { document: Value::Object(doc), failure: None })
}

pub fn selftest(seed: u64, count: usize) -> Result<Outcome, Failure> {
    let total = Instant::now();
    let mut checks = golden_suite();
    checks.push(randomized_suite(seed, count));
    let passed = checks.iter().filter(|c| c.passed).count();
    let failure = (passed < checks.len()).then(|| {
        Failure::new("SelftestFailed", format!("{} of {} checks failed", checks.len() - passed, checks.len()), 1)
    });
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("tool".into(), tool());
    doc.insert("command".into(), json!("selftest"));
    doc.insert("seed".into(), json!(seed));
    doc.insert("passed".into(), json!(passed));
    doc.insert("total".into(), json!(checks.len()));
    doc.insert("checks".into(), json!(checks));
    doc.insert("timings_ms".into(), json!({ "total": ms(total) }));
    Ok(Outcome { document: Value::Object(doc), failure })
}
