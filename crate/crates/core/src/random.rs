//! Seeded generators for random circuits and functions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::error::Result;
use crate::hazard::detect_oracle;
use crate::synthesis::{huffman_dnf, synthesize_shannon};
use crate::truth_table::TruthTable;

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A DeMorgan circuit on `n` inputs with exactly `gates` gates (when
/// `gates > 0`). Operands lean towards recent nodes so circuits are deep;
/// constants appear as leaves with small probability.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize) -> Circuit {
    let mut b = CircuitBuilder::with_arity(n);
    let mut pool: Vec<NodeId> = Vec::new();
    for v in 0..n {
        if rng.gen_bool(0.8) {
            pool.push(b.var(v));
        }
        if rng.gen_bool(0.6) {
            pool.push(b.neg(v));
        }
    }
    if pool.is_empty() || rng.gen_bool(0.05) {
        let v = rng.gen_bool(0.5);
        pool.push(b.constant(v));
    }
    let mut out = *pool.choose(rng).expect("nonempty pool");
    for _ in 0..gates {
        let pick = |rng: &mut R, pool: &[NodeId]| {
            if rng.gen_bool(0.5) {
                let recent = pool.len().min(4);
                pool[pool.len() - 1 - rng.gen_range(0..recent)]
            } else {
                pool[rng.gen_range(0..pool.len())]
            }
        };
        let (a, c) = (pick(rng, &pool), pick(rng, &pool));
        out = if rng.gen_bool(0.5) { b.and(a, c) } else { b.or(a, c) };
        pool.push(out);
    }
    b.finish(out)
}

/// A circuit with `1..=max_n` inputs and `0..=max_gates` gates.
pub fn random_small_circuit<R: Rng>(rng: &mut R, max_n: usize, max_gates: usize) -> Circuit {
    let n = rng.gen_range(1..=max_n);
    let gates = rng.gen_range(0..=max_gates);
    random_circuit(rng, n, gates)
}

/// `count` circuits from `seed`, each with at most `max_n` inputs and
/// `max_gates` gates.
pub fn corpus(seed: u64, count: usize, max_n: usize, max_gates: usize) -> Vec<Circuit> {
    let mut r = rng(seed);
    (0..count).map(|_| random_small_circuit(&mut r, max_n, max_gates)).collect()
}

pub fn random_truth_table<R: Rng>(rng: &mut R, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen_bool(0.5)).expect("arity within table limits")
}

/// A negation-free random circuit.
pub fn random_monotone_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize) -> Circuit {
    random_circuit(rng, n, gates).monotone_version()
}

/// A hazard-free circuit on `n ≤ 12` inputs, drawn from one of four
/// sources: the prime-implicant DNF or the consensus recursion of a random
/// function, a monotone random circuit, or a random circuit that the oracle
/// confirms hazard-free (after a bounded number of draws).
pub fn random_hazard_free_circuit<R: Rng>(rng: &mut R, n: usize) -> Result<Circuit> {
    match rng.gen_range(0..4) {
        0 => huffman_dnf(&random_truth_table(rng, n)),
        1 if n >= 2 => synthesize_shannon(&random_truth_table(rng, n), None),
        2 => {
            let gates = rng.gen_range(0..=3 * n);
            Ok(random_monotone_circuit(rng, n, gates))
        }
        _ => {
            for _ in 0..64 {
                let gates = rng.gen_range(0..=2 * n);
                let c = random_circuit(rng, n, gates);
                if detect_oracle(&c)?.is_hazard_free() {
                    return Ok(c);
                }
            }
            huffman_dnf(&random_truth_table(rng, n))
        }
    }
}
