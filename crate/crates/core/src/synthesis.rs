//! Hazard-free synthesis.
//!
//! Two constructions: the two-level DNF over all prime implicants, and the
//! consensus recursion `F = x̄F₀ ∨ xF₁ ∨ F₀F₁` over the last variables,
//! fed by a shared block that computes every function of the first `m`
//! variables.

use std::collections::HashMap;

use serde::Serialize;

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::error::{Error, Result};
use crate::primes::prime_implicants_qmc;
use crate::ternary::{eval_nodes_packed, pack_range, ternary_extension, ternary_space_size};
use crate::truth_table::TruthTable;

pub const DEFAULT_GATE_BUDGET: usize = 1_000_000;
pub const MAX_SHANNON_ARITY: usize = 12;
pub const MIN_BLOCK_ARITY: usize = 2;
pub const MAX_BLOCK_ARITY: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum SynthesisMethod {
    HuffmanDnf,
    ConsensusRecursion { m: usize },
}

/// Gates needed for the prime-implicant DNF of `f`.
pub fn huffman_gate_count(primes: &crate::cubes::TermSet) -> usize {
    let ands: usize = primes.iter().map(|t| t.len().saturating_sub(1)).sum();
    ands + primes.len().saturating_sub(1)
}

/// Total number of literal occurrences over the prime implicants of `f`.
pub fn huffman_literal_count(f: &TruthTable) -> usize {
    prime_implicants_qmc(f).iter().map(|t| t.len()).sum()
}

pub fn huffman_dnf(f: &TruthTable) -> Result<Circuit> {
    huffman_dnf_with_budget(f, DEFAULT_GATE_BUDGET)
}

/// The OR over all prime implicants of `f`, each an AND of its literals.
/// `f ≡ 0` gives the constant-0 circuit and `f ≡ 1` the constant-1 circuit.
pub fn huffman_dnf_with_budget(f: &TruthTable, budget: usize) -> Result<Circuit> {
    let primes = prime_implicants_qmc(f);
    if huffman_gate_count(&primes) > budget {
        return Err(Error::GateBudgetExceeded { budget });
    }
    let mut b = CircuitBuilder::with_arity(f.arity());
    let out = huffman_into(&mut b, f, &primes);
    Ok(b.finish(out))
}

fn huffman_into(b: &mut CircuitBuilder, f: &TruthTable, primes: &crate::cubes::TermSet) -> NodeId {
    if f.is_const(false) {
        return b.constant(false);
    }
    if f.is_const(true) {
        return b.constant(true);
    }
    let terms: Vec<NodeId> = primes
        .iter()
        .map(|t| {
            let lits: Vec<NodeId> = t.literals().into_iter().map(|l| b.input(l)).collect();
            b.and_all(&lits)
        })
        .collect();
    b.or_all(&terms)
}

/// `x̄F₀ ∨ xF₁ ∨ F₀F₁` over the inputs of `f0` plus a fresh last variable
/// named `var_name`. Exactly five gates are added to the two operands.
pub fn consensus_combine(f0: &Circuit, f1: &Circuit, var_name: &str) -> Result<Circuit> {
    if f0.arity() != f1.arity() {
        return Err(Error::ArityMismatch { expected: f0.arity(), got: f1.arity() });
    }
    let n = f0.arity();
    let mut names = f0.names().to_vec();
    names.push(var_name.to_string());
    if f0.names()[..].contains(&names[n]) {
        return Err(Error::InvalidCircuit(format!("variable `{var_name}` is not fresh")));
    }
    let mut b = CircuitBuilder::new(names);
    let g0 = b.import(f0);
    let g1 = b.import(f1);
    let out = combine_into(&mut b, g0, g1, n);
    let c = b.finish(out);
    Circuit::new(c.names().to_vec(), c.nodes().to_vec(), c.output())
}

fn combine_into(b: &mut CircuitBuilder, g0: NodeId, g1: NodeId, var: usize) -> NodeId {
    let (x, nx) = (b.var(var), b.neg(var));
    let a0 = b.and(nx, g0);
    let a1 = b.and(x, g1);
    let cons = b.and(g0, g1);
    let sel = b.or(a0, a1);
    b.or(sel, cons)
}

/// Incremental realization of the recursion inside one hashed builder.
/// Subfunctions of the first `k` variables are memoized by truth table, so
/// every distinct subfunction gets exactly one tap.
struct Recursion {
    b: CircuitBuilder,
    memo: HashMap<(usize, TruthTable), NodeId>,
}

impl Recursion {
    fn new(n: usize) -> Self {
        Recursion { b: CircuitBuilder::with_arity(n).hashed(), memo: HashMap::new() }
    }

    /// A hazard-free node computing `g`, a function of the first
    /// `g.arity()` variables.
    fn tap(&mut self, g: &TruthTable) -> NodeId {
        let k = g.arity();
        if let Some(&id) = self.memo.get(&(k, g.clone())) {
            return id;
        }
        let id = if k <= MIN_BLOCK_ARITY {
            let primes = prime_implicants_qmc(g);
            huffman_into(&mut self.b, g, &primes)
        } else {
            let g0 = g.cofactor(k - 1, false);
            let g1 = g.cofactor(k - 1, true);
            if g0 == g1 {
                // Independent of the last variable: reuse the narrower tap.
                self.tap(&g0)
            } else {
                let n0 = self.tap(&g0);
                let n1 = self.tap(&g1);
                combine_into(&mut self.b, n0, n1, k - 1)
            }
        };
        self.memo.insert((k, g.clone()), id);
        id
    }
}

/// A shared circuit computing all `2^(2^m)` functions of `m` variables.
#[derive(Debug, Clone)]
pub struct UniversalBlock {
    m: usize,
    circuit: Circuit,
    /// `index[g]` is the node computing the function with truth-table bits `g`.
    index: Vec<NodeId>,
}

impl UniversalBlock {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gate_count(&self) -> usize {
        self.circuit.nodes().iter().filter(|n| n.is_gate()).count()
    }

    pub fn output_count(&self) -> usize {
        self.index.len()
    }

    pub fn node_for(&self, g: &TruthTable) -> Result<NodeId> {
        if g.arity() != self.m {
            return Err(Error::ArityMismatch { expected: self.m, got: g.arity() });
        }
        Ok(self.index[g.as_u64() as usize])
    }

    /// The single-output circuit for `g`, pruned to its cone.
    pub fn circuit_for(&self, g: &TruthTable) -> Result<Circuit> {
        let id = self.node_for(g)?;
        Ok(Circuit::new(self.circuit.names().to_vec(), self.circuit.nodes().to_vec(), id)?.pruned())
    }

    /// Checks every output against the ternary extension of its function on
    /// all of `{0,u,1}^m`; equality means correct and hazard-free.
    pub fn verify(&self) -> Result<bool> {
        let m = self.m;
        let total = ternary_space_size(m);
        let mut values = vec![Vec::with_capacity(total); self.circuit.nodes().len()];
        let mut scratch = Vec::new();
        for start in (0..total).step_by(64) {
            let lanes = (total - start).min(64);
            eval_nodes_packed(&self.circuit, &pack_range(m, start, lanes), &mut scratch);
            for (id, rail) in scratch.iter().enumerate() {
                values[id].extend((0..lanes).map(|l| rail.lane(l)));
            }
        }
        for (g, &id) in self.index.iter().enumerate() {
            let f = TruthTable::from_u64(m, g as u64)?;
            if ternary_extension(&f)? != values[id] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn build_universal_block(m: usize) -> Result<UniversalBlock> {
    if !(MIN_BLOCK_ARITY..=MAX_BLOCK_ARITY).contains(&m) {
        return Err(Error::ArityOutOfRange { arity: m, min: MIN_BLOCK_ARITY, max: MAX_BLOCK_ARITY });
    }
    let mut r = Recursion::new(m);
    let count = 1u64 << (1 << m);
    let mut index = Vec::with_capacity(count as usize);
    for g in 0..count {
        index.push(r.tap(&TruthTable::from_u64(m, g)?));
    }
    let out = *index.last().expect("at least one function");
    Ok(UniversalBlock { m, circuit: r.b.finish(out), index })
}

/// `5·(2^(2^m) + 2^(n−m))`.
pub fn shannon_gate_bound(n: usize, m: usize) -> usize {
    5 * ((1usize << (1 << m)) + (1usize << n.saturating_sub(m)))
}

/// Nearest integer to `log₂(n − log₂ n)`, halves rounded up, clamped to
/// `[2, min(4, n)]`. Also returns the two integers bracketing the real value.
pub fn default_split(n: usize) -> (usize, [usize; 2]) {
    let x = n as f64;
    let target = if n >= 2 { (x - x.log2()).log2() } else { 0.0 };
    let candidates = [target.floor().max(0.0) as usize, target.ceil().max(0.0) as usize];
    let rounded = (target + 0.5).floor().max(0.0) as usize;
    let hi = MAX_BLOCK_ARITY.min(n).max(MIN_BLOCK_ARITY);
    (rounded.clamp(MIN_BLOCK_ARITY, hi), candidates)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisMetadata {
    pub method: SynthesisMethod,
    pub arity: usize,
    /// Integers bracketing `log₂(n − log₂ n)` when `m` was chosen by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_candidates: Option<[usize; 2]>,
    pub gate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_bound: Option<usize>,
    /// Distinct `m`-variable subfunctions drawn from the shared block.
    pub block_taps: usize,
    /// Gates of the pruned circuit belonging to the shared block.
    pub block_gates: usize,
    /// Gates added by the recursion above the block.
    pub combiner_gates: usize,
    /// Distinct subfunctions per recursion level, from `n` down to `m + 1`.
    pub subfunctions_per_level: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub circuit: Circuit,
    pub metadata: SynthesisMetadata,
}

pub fn synthesize(f: &TruthTable, method: SynthesisMethod) -> Result<Synthesis> {
    synthesize_with_budget(f, method, DEFAULT_GATE_BUDGET)
}

/// Fails with `GateBudgetExceeded` when the result would exceed `budget` gates.
pub fn synthesize_with_budget(f: &TruthTable, method: SynthesisMethod, budget: usize) -> Result<Synthesis> {
    match method {
        SynthesisMethod::HuffmanDnf => {
            let circuit = huffman_dnf_with_budget(f, budget)?;
            let gate_count = circuit.stats().size;
            Ok(Synthesis {
                circuit,
                metadata: SynthesisMetadata {
                    method,
                    arity: f.arity(),
                    m_candidates: None,
                    gate_count,
                    gate_bound: None,
                    block_taps: 0,
                    block_gates: 0,
                    combiner_gates: 0,
                    subfunctions_per_level: Vec::new(),
                },
            })
        }
        SynthesisMethod::ConsensusRecursion { m } => {
            let s = synthesize_shannon_with_metadata(f, Some(m))?;
            if s.metadata.gate_count > budget {
                return Err(Error::GateBudgetExceeded { budget });
            }
            Ok(s)
        }
    }
}

/// The consensus recursion over the last `n − m` variables on top of the
/// shared block for the first `m`. Arities below 2 fall back to the
/// prime-implicant DNF.
pub fn synthesize_shannon(f: &TruthTable, m: Option<usize>) -> Result<Circuit> {
    synthesize_shannon_with_metadata(f, m).map(|s| s.circuit)
}

pub fn synthesize_shannon_with_metadata(f: &TruthTable, m: Option<usize>) -> Result<Synthesis> {
    let n = f.arity();
    if n > MAX_SHANNON_ARITY {
        return Err(Error::ArityTooLarge { arity: n, max: MAX_SHANNON_ARITY });
    }
    if n < MIN_BLOCK_ARITY {
        if let Some(m) = m {
            return Err(Error::ArityOutOfRange { arity: m, min: MIN_BLOCK_ARITY, max: n });
        }
        return synthesize(f, SynthesisMethod::HuffmanDnf);
    }
    let (m, m_candidates) = match m {
        Some(m) => {
            let hi = MAX_BLOCK_ARITY.min(n);
            if !(MIN_BLOCK_ARITY..=hi).contains(&m) {
                return Err(Error::ArityOutOfRange { arity: m, min: MIN_BLOCK_ARITY, max: hi });
            }
            (m, None)
        }
        None => {
            let (m, c) = default_split(n);
            (m, Some(c))
        }
    };

    let mut r = Recursion::new(n);
    let mut block_nodes = vec![false; 0];
    let mut levels: Vec<Vec<TruthTable>> = vec![vec![f.clone()]];
    for k in (m + 1..=n).rev() {
        let mut next: Vec<TruthTable> = Vec::new();
        for g in levels.last().unwrap() {
            for v in [false, true] {
                let sub = g.cofactor(k - 1, v);
                if !next.contains(&sub) {
                    next.push(sub);
                }
            }
        }
        levels.push(next);
    }
    let block_taps = levels.last().unwrap().len();
    for g in levels.last().unwrap() {
        r.tap(g);
    }
    block_nodes.resize(r.b.node_count(), true);
    let out = r.tap(f);
    block_nodes.resize(r.b.node_count(), false);

    let circuit = r.b.finish(out);
    let live = circuit.reachable();
    let mut block_gates = 0;
    let mut combiner_gates = 0;
    for (id, node) in circuit.nodes().iter().enumerate() {
        if live[id] && node.is_gate() {
            if block_nodes[id] {
                block_gates += 1;
            } else {
                combiner_gates += 1;
            }
        }
    }
    let circuit = circuit.pruned();
    let gate_count = circuit.stats().size;
    let mut subfunctions_per_level: Vec<usize> = levels.iter().map(Vec::len).collect();
    subfunctions_per_level.pop();
    Ok(Synthesis {
        circuit,
        metadata: SynthesisMetadata {
            method: SynthesisMethod::ConsensusRecursion { m },
            arity: n,
            m_candidates,
            gate_count,
            gate_bound: Some(shannon_gate_bound(n, m)),
            block_taps,
            block_gates,
            combiner_gates,
            subfunctions_per_level,
        },
    })
}
