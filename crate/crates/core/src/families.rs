//! Benchmark functions with explicit unrestricted circuits.
//!
//! Circuits that need internal negation carry every signal in dual rail:
//! one node for the signal and one for its complement, both built from
//! literals with AND/OR only.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{default_names, Circuit, CircuitBuilder, CircuitStats, NodeId};
use crate::error::{Error, Result};
use crate::hazard::detect_prime_witness;
use crate::primes::prime_implicants_qmc;
use crate::synthesis::{huffman_dnf, synthesize_shannon_with_metadata, MAX_SHANNON_ARITY};

pub const MAX_EXACT_K_ARITY: usize = 16;

#[derive(Debug, Clone, Copy)]
struct Sig {
    pos: NodeId,
    neg: NodeId,
}

struct Rails {
    b: CircuitBuilder,
}

impl Rails {
    fn new(names: Vec<String>) -> Self {
        Rails { b: CircuitBuilder::new(names) }
    }

    fn input(&mut self, var: usize) -> Sig {
        Sig { pos: self.b.var(var), neg: self.b.neg(var) }
    }

    fn constant(&mut self, v: bool) -> Sig {
        Sig { pos: self.b.constant(v), neg: self.b.constant(!v) }
    }

    fn and(&mut self, x: Sig, y: Sig) -> Sig {
        Sig { pos: self.b.and(x.pos, y.pos), neg: self.b.or(x.neg, y.neg) }
    }

    fn xor(&mut self, x: Sig, y: Sig) -> Sig {
        let (pn, np) = (self.b.and(x.pos, y.neg), self.b.and(x.neg, y.pos));
        let (pp, nn) = (self.b.and(x.pos, y.pos), self.b.and(x.neg, y.neg));
        Sig { pos: self.b.or(pn, np), neg: self.b.or(pp, nn) }
    }

    fn xor_tree(&mut self, sigs: &[Sig]) -> Sig {
        match sigs.len() {
            0 => self.constant(false),
            1 => sigs[0],
            len => {
                let (l, r) = sigs.split_at(len / 2);
                let (l, r) = (self.xor_tree(l), self.xor_tree(r));
                self.xor(l, r)
            }
        }
    }

    /// Carry of a full adder: `ab ∨ c(a ∨ b)`, complement dually.
    fn majority(&mut self, a: Sig, b: Sig, c: Sig) -> Sig {
        let ab = self.b.and(a.pos, b.pos);
        let a_or_b = self.b.or(a.pos, b.pos);
        let c_ab = self.b.and(c.pos, a_or_b);
        let pos = self.b.or(ab, c_ab);
        let nab = self.b.and(a.neg, b.neg);
        let na_or_nb = self.b.or(a.neg, b.neg);
        let nc_nab = self.b.and(c.neg, na_or_nb);
        let neg = self.b.or(nab, nc_nab);
        Sig { pos, neg }
    }

    /// Binary count of `sigs`, least significant bit first, by column
    /// compression with full and half adders.
    fn count(&mut self, sigs: &[Sig]) -> Vec<Sig> {
        let mut columns: Vec<Vec<Sig>> = vec![sigs.to_vec()];
        let mut bits = Vec::new();
        let mut j = 0;
        while j < columns.len() {
            while columns[j].len() >= 2 {
                let col = &mut columns[j];
                let (sum, carry) = if col.len() >= 3 {
                    let (a, b, c) = (col.remove(0), col.remove(0), col.remove(0));
                    let ab = self.xor(a, b);
                    (self.xor(ab, c), self.majority(a, b, c))
                } else {
                    let (a, b) = (col.remove(0), col.remove(0));
                    (self.xor(a, b), self.and(a, b))
                };
                columns[j].push(sum);
                if columns.len() == j + 1 {
                    columns.push(Vec::new());
                }
                columns[j + 1].push(carry);
            }
            bits.push(columns[j].first().copied());
            j += 1;
        }
        bits.into_iter().map(|b| b.unwrap_or_else(|| self.constant(false))).collect()
    }

    /// `Exact_k` of `sigs`: the count compared bitwise with the constant `k`.
    fn exact(&mut self, sigs: &[Sig], k: usize) -> Sig {
        if k > sigs.len() {
            return self.constant(false);
        }
        let bits = self.count(sigs);
        let mut pos = Vec::with_capacity(bits.len());
        let mut neg = Vec::with_capacity(bits.len());
        for (j, bit) in bits.iter().enumerate() {
            if k >> j & 1 == 1 {
                pos.push(bit.pos);
                neg.push(bit.neg);
            } else {
                pos.push(bit.neg);
                neg.push(bit.pos);
            }
        }
        Sig { pos: self.b.and_tree(&pos), neg: self.b.or_tree(&neg) }
    }

    fn and_all(&mut self, sigs: &[Sig]) -> Sig {
        let pos: Vec<NodeId> = sigs.iter().map(|s| s.pos).collect();
        let neg: Vec<NodeId> = sigs.iter().map(|s| s.neg).collect();
        Sig { pos: self.b.and_tree(&pos), neg: self.b.or_tree(&neg) }
    }

    fn finish(self, out: Sig) -> Circuit {
        self.b.finish(out.pos).pruned()
    }
}

/// `xz ∨ yz̄` over inputs `x y z`.
pub fn mk_multiplexer() -> Circuit {
    let mut b = CircuitBuilder::new(vec!["x".into(), "y".into(), "z".into()]);
    let (x, y, z, nz) = (b.var(0), b.var(1), b.var(2), b.neg(2));
    let g1 = b.and(x, z);
    let g2 = b.and(y, nz);
    let out = b.or(g1, g2);
    b.finish(out)
}

/// Balanced XOR tree, each `a ⊕ b` expanded as `ab̄ ∨ āb`.
pub fn mk_parity(n: usize) -> Result<Circuit> {
    if n == 0 || n > crate::circuit::MAX_INPUTS {
        return Err(Error::ParamOutOfRange(format!("parity needs 1 <= n <= 64, got {n}")));
    }
    let mut r = Rails::new(default_names(n));
    let sigs: Vec<Sig> = (0..n).map(|i| r.input(i)).collect();
    let out = r.xor_tree(&sigs);
    Ok(r.finish(out))
}

/// Counter followed by an equality comparator against `k`.
pub fn mk_exact_k(m: usize, k: usize) -> Result<Circuit> {
    if m > MAX_EXACT_K_ARITY || k > m {
        return Err(Error::ParamOutOfRange(format!("exact_k needs 0 <= k <= m <= 16, got m={m}, k={k}")));
    }
    let mut r = Rails::new(default_names(m));
    let sigs: Vec<Sig> = (0..m).map(|i| r.input(i)).collect();
    let out = r.exact(&sigs, k);
    Ok(r.finish(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PmVariant {
    Formula,
    Counting,
}

/// Variable names `x{i}_{j}` of an `m×m` matrix, row-major.
pub fn matrix_names(m: usize) -> Vec<String> {
    (1..=m).flat_map(|i| (1..=m).map(move |j| format!("x{i}_{j}"))).collect()
}

/// Accepts exactly the `m×m` permutation matrices.
///
/// `Formula` is `F₁ ∧ F₂` where `F₁` asks every row for exactly one 1 as
/// an OR of "this position and no other" terms, and `F₂` the same for
/// columns. `Counting` conjoins `Exact_1` circuits over rows and columns.
pub fn mk_exact_pm(m: usize, variant: PmVariant) -> Result<Circuit> {
    if !(2..=4).contains(&m) {
        return Err(Error::ParamOutOfRange(format!("exact_pm needs 2 <= m <= 4, got {m}")));
    }
    let var = |i: usize, j: usize| i * m + j;
    match variant {
        PmVariant::Formula => {
            let mut b = CircuitBuilder::new(matrix_names(m));
            let line = |b: &mut CircuitBuilder, cell: &dyn Fn(usize, usize) -> usize| {
                let rows: Vec<NodeId> = (0..m)
                    .map(|i| {
                        let terms: Vec<NodeId> = (0..m)
                            .map(|j| {
                                let mut lits = vec![b.var(cell(i, j))];
                                lits.extend((0..m).filter(|&k| k != j).map(|k| b.neg(cell(i, k))));
                                b.and_all(&lits)
                            })
                            .collect();
                        b.or_all(&terms)
                    })
                    .collect();
                b.and_all(&rows)
            };
            let f1 = line(&mut b, &|i, j| var(i, j));
            let f2 = line(&mut b, &|i, j| var(j, i));
            let out = b.and(f1, f2);
            Ok(b.finish(out))
        }
        PmVariant::Counting => {
            let mut r = Rails::new(matrix_names(m));
            let cells: Vec<Sig> = (0..m * m).map(|v| r.input(v)).collect();
            let mut lines = Vec::with_capacity(2 * m);
            for i in 0..m {
                let row: Vec<Sig> = (0..m).map(|j| cells[var(i, j)]).collect();
                lines.push(r.exact(&row, 1));
            }
            for j in 0..m {
                let col: Vec<Sig> = (0..m).map(|i| cells[var(i, j)]).collect();
                lines.push(r.exact(&col, 1));
            }
            let out = r.and_all(&lines);
            Ok(r.finish(out))
        }
    }
}

/// Edge variables `e{i}_{j}` for `1 ≤ i < j ≤ m`, lexicographically.
pub fn edge_names(m: usize) -> Vec<String> {
    (1..=m).flat_map(|i| (i + 1..=m).map(move |j| format!("e{i}_{j}"))).collect()
}

/// Index of edge `{i, j}` (0-based vertices) in [`edge_names`] order.
pub fn edge_index(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

/// Accepts graphs that are a `k`-clique plus isolated vertices:
/// `Exact_{k(k−1)/2}(x) ∧ Exact_k(y)` with `y_i = Exact_{k−1}` over the
/// edges at vertex `i`. For `k = 1` every isolated vertex has degree
/// `k − 1`, so the degree test is dropped and only `Exact_0(x)` remains.
pub fn mk_exact_clique(m: usize, k: usize) -> Result<Circuit> {
    if !(1..=6).contains(&m) || !(1..=m).contains(&k) {
        return Err(Error::ParamOutOfRange(format!(
            "exact_clique needs 1 <= k <= m <= 6, got m={m}, k={k}"
        )));
    }
    let n = m * (m - 1) / 2;
    let mut r = Rails::new(edge_names(m));
    let edges: Vec<Sig> = (0..n).map(|v| r.input(v)).collect();
    if k == 1 {
        let out = r.exact(&edges, 0);
        return Ok(r.finish(out));
    }
    let degrees: Vec<Sig> = (0..m)
        .map(|i| {
            let row: Vec<Sig> =
                (0..m).filter(|&j| j != i).map(|j| edges[edge_index(m, i, j)]).collect();
            r.exact(&row, k - 1)
        })
        .collect();
    let edge_count = r.exact(&edges, k * (k - 1) / 2);
    let vertex_count = r.exact(&degrees, k);
    let out = r.and(edge_count, vertex_count);
    Ok(r.finish(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum FamilySpec {
    Multiplexer,
    Parity { n: usize },
    ExactK { m: usize, k: usize },
    ExactPm { m: usize, variant: PmVariant },
    ExactClique { m: usize, k: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Circuit> {
        match *self {
            FamilySpec::Multiplexer => Ok(mk_multiplexer()),
            FamilySpec::Parity { n } => mk_parity(n),
            FamilySpec::ExactK { m, k } => mk_exact_k(m, k),
            FamilySpec::ExactPm { m, variant } => mk_exact_pm(m, variant),
            FamilySpec::ExactClique { m, k } => mk_exact_clique(m, k),
        }
    }

    pub fn arity(&self) -> usize {
        match *self {
            FamilySpec::Multiplexer => 3,
            FamilySpec::Parity { n } => n,
            FamilySpec::ExactK { m, .. } => m,
            FamilySpec::ExactPm { m, .. } => m * m,
            FamilySpec::ExactClique { m, .. } => m * (m - 1) / 2,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Multiplexer => write!(f, "family:multiplexer"),
            FamilySpec::Parity { n } => write!(f, "family:parity:{n}"),
            FamilySpec::ExactK { m, k } => write!(f, "family:exact_k:{m}:{k}"),
            FamilySpec::ExactPm { m, variant } => {
                let v = match variant {
                    PmVariant::Formula => "formula",
                    PmVariant::Counting => "counting",
                };
                write!(f, "family:exact_pm:{m}:{v}")
            }
            FamilySpec::ExactClique { m, k } => write!(f, "family:exact_clique:{m}:{k}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `family:<name>[:<param>...]`; the `family:` prefix is optional.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("family:").unwrap_or(s);
        let parts: Vec<&str> = body.split(':').collect();
        let bad = || Error::ParamOutOfRange(format!("unrecognized family `{s}`"));
        let num = |i: usize| -> Result<usize> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad)
        };
        let spec = match (parts[0], parts.len()) {
            ("multiplexer", 1) => FamilySpec::Multiplexer,
            ("parity", 2) => FamilySpec::Parity { n: num(1)? },
            ("exact_k", 3) => FamilySpec::ExactK { m: num(1)?, k: num(2)? },
            ("exact_pm", 2) => FamilySpec::ExactPm { m: num(1)?, variant: PmVariant::Formula },
            ("exact_pm", 3) => {
                let variant = match parts[2] {
                    "formula" => PmVariant::Formula,
                    "counting" => PmVariant::Counting,
                    _ => return Err(bad()),
                };
                FamilySpec::ExactPm { m: num(1)?, variant }
            }
            ("exact_clique", 3) => FamilySpec::ExactClique { m: num(1)?, k: num(2)? },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HazardVerdict {
    pub has_0_hazard: bool,
    pub has_1_hazard: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HuffmanSummary {
    pub stats: CircuitStats,
    pub prime_implicants: usize,
    pub literal_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShannonSummary {
    pub stats: CircuitStats,
    pub m: usize,
    pub gate_bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub function: String,
    pub arity: usize,
    pub unrestricted: CircuitStats,
    pub unrestricted_hazards: HazardVerdict,
    pub hazard_free_huffman: HuffmanSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hazard_free_shannon: Option<ShannonSummary>,
    /// Prime implicants of the upwards closure.
    pub monotone_closure_primes: usize,
    /// How the circuits were checked to agree.
    pub verified: &'static str,
}

/// Sizes of the unrestricted family circuit and of hazard-free circuits for
/// the same function, all checked against one truth table.
pub fn gap_report(spec: &FamilySpec) -> Result<GapReport> {
    let unrestricted = spec.build()?;
    let f = unrestricted.truth_table()?;
    let mismatch = |what: &str| {
        Error::InternalContractViolation(format!("{what} circuit disagrees with {spec}"))
    };
    let primes = prime_implicants_qmc(&f);
    let huffman = huffman_dnf(&f)?;
    if huffman.truth_table()? != f {
        return Err(mismatch("huffman"));
    }
    let shannon = if f.arity() <= MAX_SHANNON_ARITY && f.arity() >= 2 {
        let s = synthesize_shannon_with_metadata(&f, None)?;
        if s.circuit.truth_table()? != f {
            return Err(mismatch("shannon"));
        }
        let m = match s.metadata.method {
            crate::synthesis::SynthesisMethod::ConsensusRecursion { m } => m,
            crate::synthesis::SynthesisMethod::HuffmanDnf => 0,
        };
        Some(ShannonSummary {
            stats: s.circuit.stats(),
            m,
            gate_bound: s.metadata.gate_bound.unwrap_or(0),
        })
    } else {
        None
    };
    let hz = detect_prime_witness(&unrestricted)?;
    Ok(GapReport {
        function: spec.to_string(),
        arity: f.arity(),
        unrestricted: unrestricted.stats(),
        unrestricted_hazards: HazardVerdict {
            has_0_hazard: hz.has_0_hazard,
            has_1_hazard: hz.has_1_hazard,
        },
        hazard_free_huffman: HuffmanSummary {
            stats: huffman.stats(),
            prime_implicants: primes.len(),
            literal_count: primes.iter().map(|t| t.len()).sum(),
        },
        hazard_free_shannon: shannon,
        monotone_closure_primes: prime_implicants_qmc(&f.upwards_closure()).len(),
        verified: "exhaustive",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepted(c: &Circuit) -> u64 {
        c.truth_table().unwrap().count_ones()
    }

    #[test]
    fn small_families() {
        assert_eq!(mk_multiplexer().stats().size, 3);
        let p1 = mk_parity(1).unwrap();
        assert_eq!(p1.stats().size, 0);
        assert_eq!(accepted(&mk_parity(4).unwrap()), 8);
        assert!(mk_parity(0).is_err());
    }

    #[test]
    fn exact_k_counts() {
        assert_eq!(accepted(&mk_exact_k(3, 0).unwrap()), 1);
        assert_eq!(accepted(&mk_exact_k(3, 1).unwrap()), 3);
        assert_eq!(accepted(&mk_exact_k(4, 2).unwrap()), 6);
        assert_eq!(accepted(&mk_exact_k(0, 0).unwrap()), 1);
        assert!(mk_exact_k(3, 4).is_err());
    }

    #[test]
    fn matching_and_clique_counts() {
        for v in [PmVariant::Formula, PmVariant::Counting] {
            assert_eq!(accepted(&mk_exact_pm(2, v).unwrap()), 2);
            assert_eq!(accepted(&mk_exact_pm(3, v).unwrap()), 6);
        }
        assert_eq!(mk_exact_pm(3, PmVariant::Formula).unwrap().stats().size, 53);
        assert_eq!(accepted(&mk_exact_clique(4, 2).unwrap()), 6);
        assert_eq!(accepted(&mk_exact_clique(4, 4).unwrap()), 1);
        assert_eq!(accepted(&mk_exact_clique(3, 1).unwrap()), 1);
        assert_eq!(edge_names(4)[edge_index(4, 1, 3)], "e2_4");
    }

    #[test]
    fn spec_round_trip() {
        for s in [
            "family:multiplexer",
            "family:parity:4",
            "family:exact_k:5:2",
            "family:exact_pm:3:counting",
            "family:exact_clique:4:3",
        ] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
        assert_eq!(
            "family:exact_pm:3".parse::<FamilySpec>().unwrap(),
            FamilySpec::ExactPm { m: 3, variant: PmVariant::Formula }
        );
        assert!("family:nope".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn gap_for_matchings() {
        let r = gap_report(&"family:exact_pm:3".parse().unwrap()).unwrap();
        assert_eq!(r.hazard_free_huffman.prime_implicants, 6);
        assert_eq!(r.hazard_free_huffman.literal_count, 54);
        assert_eq!(r.unrestricted.size, 53);
        let r = gap_report(&FamilySpec::Multiplexer).unwrap();
        assert_eq!((r.unrestricted.size, r.hazard_free_huffman.stats.size), (3, 5));
    }
}
