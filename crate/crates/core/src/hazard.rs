//! Hazard detection and the structural hazard theorems.
//!
//! Three detectors with identical verdicts:
//!
//! * the oracle compares the circuit's ternary output with the ternary
//!   extension of its function on all of `{0,u,1}^n`;
//! * the prime-witness detector evaluates only at prime witnesses;
//! * the structural detector compares the produced DNF/CNF with the prime
//!   implicants and implicates.

use std::collections::BTreeSet;
use std::ops::Range;

use serde::Serialize;

use crate::circuit::Circuit;
use crate::cubes::{vector_of_clause, vector_of_term, witness_clause, witness_term, Clause, Term};
use crate::error::{Error, Result};
use crate::primes::{prime_implicants_qmc, prime_implicates};
use crate::produce::{formal_cnf, formal_dnf};
use crate::ternary::{
    eval_ternary, eval_ternary_many, eval_ternary_range, ternary_extension, ternary_space_size,
    vector_at, MAX_ENUM_ARITY,
};
use crate::tri::{Tri, TriVector};
use crate::truth_table::TruthTable;

/// Witness lists in reports are truncated to this many entries.
pub const MAX_REPORTED_WITNESSES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Polarity {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl Polarity {
    pub fn from_bool(v: bool) -> Polarity {
        if v {
            Polarity::One
        } else {
            Polarity::Zero
        }
    }

    pub fn value(self) -> bool {
        self == Polarity::One
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    PrimeWitness,
    Structural,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::PrimeWitness => "prime-witness",
            Method::Structural => "structural",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HazardWitness {
    pub polarity: Polarity,
    pub vector: TriVector,
    /// Numbers of the structural conditions this method established.
    pub conditions: Vec<u8>,
    /// The prime cube absent from the produced set, when known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing_prime: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HazardReport {
    pub method: Method,
    pub has_0_hazard: bool,
    pub has_1_hazard: bool,
    /// Number of witnesses found, before truncation.
    pub witness_count: usize,
    /// Sorted by vector (`0 < u < 1` per position); the first is canonical.
    pub witnesses: Vec<HazardWitness>,
}

impl HazardReport {
    fn from_witnesses(method: Method, mut witnesses: Vec<HazardWitness>) -> HazardReport {
        witnesses.sort_by(|a, b| (&a.vector, a.polarity).cmp(&(&b.vector, b.polarity)));
        let has_0_hazard = witnesses.iter().any(|w| w.polarity == Polarity::Zero);
        let has_1_hazard = witnesses.iter().any(|w| w.polarity == Polarity::One);
        let witness_count = witnesses.len();
        witnesses.truncate(MAX_REPORTED_WITNESSES);
        HazardReport { method, has_0_hazard, has_1_hazard, witness_count, witnesses }
    }

    pub fn is_hazard_free(&self) -> bool {
        !self.has_0_hazard && !self.has_1_hazard
    }

    pub fn same_verdict(&self, other: &HazardReport) -> bool {
        self.has_0_hazard == other.has_0_hazard && self.has_1_hazard == other.has_1_hazard
    }

    pub fn canonical_witness(&self) -> Option<&HazardWitness> {
        self.witnesses.first()
    }

    /// `(polarity, vector)` pairs of the reported witnesses.
    pub fn witness_set(&self) -> BTreeSet<(Polarity, TriVector)> {
        self.witnesses.iter().map(|w| (w.polarity, w.vector.clone())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PrimeWitness {
    pub vector: TriVector,
    pub polarity: Polarity,
}

/// All prime 1-witnesses (from prime implicants) and prime 0-witnesses
/// (from prime implicates) of `f`, sorted. A constant function has the
/// single all-`u` witness.
pub fn prime_witnesses(f: &TruthTable) -> Vec<PrimeWitness> {
    let n = f.arity();
    let ones = prime_implicants_qmc(f)
        .into_iter()
        .map(|t| PrimeWitness { vector: vector_of_term(&t, n), polarity: Polarity::One });
    let zeros = prime_implicates(f)
        .into_iter()
        .map(|c| PrimeWitness { vector: vector_of_clause(&c, n), polarity: Polarity::Zero });
    let mut all: Vec<PrimeWitness> = ones.chain(zeros).collect();
    all.sort();
    all
}

fn check_enum_arity(c: &Circuit) -> Result<()> {
    if c.arity() > MAX_ENUM_ARITY {
        return Err(Error::ArityTooLarge { arity: c.arity(), max: MAX_ENUM_ARITY });
    }
    Ok(())
}

/// Hazards of `c` on the lexicographic index range `range`, given the
/// ternary extension `ext` of its function. Disjoint ranges may be scanned
/// independently.
pub fn oracle_hazards_in_range(
    c: &Circuit,
    ext: &[Tri],
    range: Range<usize>,
) -> Vec<(usize, Polarity)> {
    let start = range.start;
    eval_ternary_range(c, range)
        .into_iter()
        .enumerate()
        .filter_map(|(k, v)| {
            let expected = ext[start + k];
            match (expected.to_bool(), v) {
                (Some(e), Tri::Unstable) => Some((start + k, Polarity::from_bool(e))),
                _ => None,
            }
        })
        .collect()
}

/// Per-vector hazard polarity over all of `{0,u,1}^n`, lexicographically.
pub fn hazard_map(c: &Circuit) -> Result<Vec<Option<Polarity>>> {
    check_enum_arity(c)?;
    let ext = ternary_extension(&c.truth_table()?)?;
    let mut map = vec![None; ext.len()];
    for (idx, p) in scan_parallel(c, &ext) {
        map[idx] = Some(p);
    }
    Ok(map)
}

fn scan_parallel(c: &Circuit, ext: &[Tri]) -> Vec<(usize, Polarity)> {
    let total = ext.len();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    if total < 1 << 14 || threads == 1 {
        return oracle_hazards_in_range(c, ext, 0..total);
    }
    let chunk = total.div_ceil(threads).next_multiple_of(64);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..total)
            .step_by(chunk)
            .map(|lo| s.spawn(move || oracle_hazards_in_range(c, ext, lo..(lo + chunk).min(total))))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("oracle worker panicked")).collect()
    })
}

/// Exhaustive detection over every vector with an unstable entry.
pub fn detect_oracle(c: &Circuit) -> Result<HazardReport> {
    check_enum_arity(c)?;
    let n = c.arity();
    let ext = ternary_extension(&c.truth_table()?)?;
    debug_assert_eq!(ext.len(), ternary_space_size(n));
    let witnesses = scan_parallel(c, &ext)
        .into_iter()
        .map(|(idx, polarity)| HazardWitness {
            polarity,
            vector: vector_at(n, idx),
            conditions: vec![1],
            missing_prime: None,
        })
        .collect();
    Ok(HazardReport::from_witnesses(Method::Oracle, witnesses))
}

/// Detection by evaluating the circuit at the prime witnesses only.
pub fn detect_prime_witness(c: &Circuit) -> Result<HazardReport> {
    let f = c.truth_table()?;
    let candidates = prime_witnesses(&f);
    let vectors: Vec<TriVector> = candidates.iter().map(|w| w.vector.clone()).collect();
    let values = eval_ternary_many(c, &vectors);
    let mut witnesses = Vec::new();
    for (w, v) in candidates.into_iter().zip(values) {
        match v.to_bool() {
            None => witnesses.push(HazardWitness {
                polarity: w.polarity,
                vector: w.vector,
                conditions: vec![1],
                missing_prime: None,
            }),
            Some(b) if b != w.polarity.value() => {
                return Err(Error::InternalContractViolation(format!(
                    "stable output {} at witness {}",
                    u8::from(b),
                    w.vector
                )))
            }
            Some(_) => {}
        }
    }
    Ok(HazardReport::from_witnesses(Method::PrimeWitness, witnesses))
}

/// Detection by set difference: a 1-hazard for every prime implicant missing
/// from the formal DNF, a 0-hazard for every prime implicate missing from
/// the formal CNF. Constant primes are matched by membership too.
pub fn detect_structural(c: &Circuit) -> Result<HazardReport> {
    let n = c.arity();
    let f = c.truth_table()?;
    let dnf = formal_dnf(c)?;
    let cnf = formal_cnf(c)?;
    let names = c.names();
    let mut witnesses = Vec::new();
    for p in prime_implicants_qmc(&f) {
        if !dnf.contains(&p) {
            witnesses.push(HazardWitness {
                polarity: Polarity::One,
                vector: vector_of_term(&p, n),
                conditions: vec![5],
                missing_prime: Some(p.to_text(names)),
            });
        }
    }
    for p in prime_implicates(&f) {
        if !cnf.contains(&p) {
            witnesses.push(HazardWitness {
                polarity: Polarity::Zero,
                vector: vector_of_clause(&p, n),
                conditions: vec![5],
                missing_prime: Some(p.to_text(names)),
            });
        }
    }
    Ok(HazardReport::from_witnesses(Method::Structural, witnesses))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeValue {
    pub cube: String,
    pub value: Tri,
}

/// The five equivalent hazard conditions at one prime witness, with the
/// cubes that establish each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub polarity: Polarity,
    pub vector: TriVector,
    /// `α∧` for a 1-witness, `α∨` for a 0-witness.
    pub witness_cube: String,
    pub satisfied: Vec<u8>,
    /// A produced one-clause (zero-term) evaluating to `u` at the vector.
    pub cube_at_u: Option<String>,
    /// A produced one-clause (zero-term) disjoint from the witness cube.
    pub disjoint_cube: Option<String>,
    /// Every produced term (clause) with its value at the vector.
    pub values: Vec<CubeValue>,
    pub witness_cube_produced: bool,
}

impl ConditionCheck {
    pub fn all_or_nothing(&self) -> bool {
        self.satisfied.is_empty() || self.satisfied == [1, 2, 3, 4, 5]
    }
}

fn collect_satisfied(flags: [bool; 5]) -> Vec<u8> {
    (1..=5u8).zip(flags).filter(|&(_, f)| f).map(|(i, _)| i).collect()
}

fn check_len(c: &Circuit, alpha: &TriVector) -> Result<()> {
    if alpha.len() != c.arity() {
        return Err(Error::ArityMismatch { expected: c.arity(), got: alpha.len() });
    }
    Ok(())
}

/// The 1-hazard conditions at a prime 1-witness `alpha`:
/// (1) hazard at `alpha`; (2) some produced one-clause is `u` at `alpha`;
/// (3) some produced one-clause is disjoint from `α∧`; (4) no produced term
/// is 1 at `alpha`; (5) `α∧` is not produced.
pub fn check_thm5_conditions(c: &Circuit, alpha: &TriVector) -> Result<ConditionCheck> {
    check_len(c, alpha)?;
    let f = c.truth_table()?;
    let t = witness_term(alpha);
    if !prime_implicants_qmc(&f).contains(&t) {
        return Err(Error::NotPrimeWitness(alpha.to_string()));
    }
    let dnf = formal_dnf(c)?;
    let cnf = formal_cnf(c)?;
    let names = c.names();
    let one_clauses: Vec<&Clause> = cnf.iter().filter(|k| k.is_one_clause()).collect();
    let cube_at_u = one_clauses.iter().find(|k| k.eval_ternary(alpha) == Tri::Unstable);
    let disjoint = one_clauses.iter().find(|k| k.disjoint_from(&t));
    let values: Vec<CubeValue> = dnf
        .iter()
        .map(|s| CubeValue { cube: s.to_text(names), value: s.eval_ternary(alpha) })
        .collect();
    let produced = dnf.contains(&t);
    let flags = [
        eval_ternary(c, alpha)? == Tri::Unstable,
        cube_at_u.is_some(),
        disjoint.is_some(),
        values.iter().all(|v| v.value != Tri::One),
        !produced,
    ];
    Ok(ConditionCheck {
        polarity: Polarity::One,
        vector: alpha.clone(),
        witness_cube: t.to_text(names),
        satisfied: collect_satisfied(flags),
        cube_at_u: cube_at_u.map(|k| k.to_text(names)),
        disjoint_cube: disjoint.map(|k| k.to_text(names)),
        values,
        witness_cube_produced: produced,
    })
}

/// The dual conditions at a prime 0-witness `alpha`: (2) and (3) ask for
/// zero-terms, (4) for no produced clause being 0, (5) for `α∨` missing.
pub fn check_thm6_conditions(c: &Circuit, alpha: &TriVector) -> Result<ConditionCheck> {
    check_len(c, alpha)?;
    let f = c.truth_table()?;
    let k = witness_clause(alpha);
    if !prime_implicates(&f).contains(&k) {
        return Err(Error::NotPrimeWitness(alpha.to_string()));
    }
    let dnf = formal_dnf(c)?;
    let cnf = formal_cnf(c)?;
    let names = c.names();
    let zero_terms: Vec<&Term> = dnf.iter().filter(|t| t.is_zero_term()).collect();
    let cube_at_u = zero_terms.iter().find(|t| t.eval_ternary(alpha) == Tri::Unstable);
    let disjoint = zero_terms.iter().find(|t| t.disjoint_from(&k));
    let values: Vec<CubeValue> = cnf
        .iter()
        .map(|s| CubeValue { cube: s.to_text(names), value: s.eval_ternary(alpha) })
        .collect();
    let produced = cnf.contains(&k);
    let flags = [
        eval_ternary(c, alpha)? == Tri::Unstable,
        cube_at_u.is_some(),
        disjoint.is_some(),
        values.iter().all(|v| v.value != Tri::Zero),
        !produced,
    ];
    Ok(ConditionCheck {
        polarity: Polarity::Zero,
        vector: alpha.clone(),
        witness_cube: k.to_text(names),
        satisfied: collect_satisfied(flags),
        cube_at_u: cube_at_u.map(|t| t.to_text(names)),
        disjoint_cube: disjoint.map(|t| t.to_text(names)),
        values,
        witness_cube_produced: produced,
    })
}

/// A produced zero-term whose positive factor is not an implicant of `f↑`,
/// together with a vector at which the circuit has a 0-hazard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroHazardCertificate {
    #[serde(skip)]
    pub term: Term,
    pub zero_term: String,
    pub vector: TriVector,
}

/// Sufficient evidence of a 0-hazard from the formal DNF alone. `None`
/// does not imply the absence of 0-hazards.
///
/// For the first qualifying zero-term `t` let `a` be the indicator of its
/// positive variables; then `f↑(a) = 0`, and the vector with `u` on the
/// variables occurring in both polarities and `a` elsewhere is a hazard.
pub fn check_cor34(c: &Circuit) -> Result<Option<ZeroHazardCertificate>> {
    let n = c.arity();
    let up = c.truth_table()?.upwards_closure();
    let dnf = formal_dnf(c)?;
    for t in dnf.iter().filter(|t| t.is_zero_term()) {
        if up.get(t.pos) {
            continue;
        }
        let both = t.pos & t.neg;
        let vector = TriVector(
            (0..n)
                .map(|i| match (both >> i & 1, t.pos >> i & 1) {
                    (1, _) => Tri::Unstable,
                    (0, 1) => Tri::One,
                    _ => Tri::Zero,
                })
                .collect(),
        );
        return Ok(Some(ZeroHazardCertificate {
            term: *t,
            zero_term: t.to_text(c.names()),
            vector,
        }));
    }
    Ok(None)
}

/// The implication "no 0-hazards ⇒ `F⁺` computes `f↑`". Always true.
pub fn verify_thm1(c: &Circuit) -> Result<bool> {
    let report = detect_oracle(c)?;
    let f = c.truth_table()?;
    Ok(report.has_0_hazard || c.monotone_version().truth_table()? == f.upwards_closure())
}

/// The biconditional "`F⁺` computes `f↑` ⇔ every produced zero-term has a
/// positive factor below `f↑`". Always true.
pub fn verify_thm2(c: &Circuit) -> Result<bool> {
    let up = c.truth_table()?.upwards_closure();
    let lhs = c.monotone_version().truth_table()? == up;
    let rhs = formal_dnf(c)?.iter().filter(|t| t.is_zero_term()).all(|t| up.get(t.pos));
    Ok(lhs == rhs)
}
