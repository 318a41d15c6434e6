//! Prime implicants and prime implicates.
//!
//! Two independent routes: Quine–McCluskey merging on the truth table, and
//! the iterated consensus (Blake canonical form) on an arbitrary term set.

use std::collections::HashSet;

use crate::cubes::{ClauseSet, Term, TermSet};
use crate::truth_table::TruthTable;

/// Prime implicants of `f` by Quine–McCluskey.
///
/// Cubes are `(value, free)` bitmask pairs. Level `k` holds the implicants
/// with `k` free variables; two cubes merge when they share the free set and
/// differ in exactly one fixed bit. Cubes that never merge are prime.
pub fn prime_implicants_qmc(f: &TruthTable) -> TermSet {
    let n = f.arity();
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut level: HashSet<(u64, u64)> = f.ones().map(|a| (a, 0)).collect();
    let mut primes = TermSet::new();
    while !level.is_empty() {
        let mut merged: HashSet<(u64, u64)> = HashSet::new();
        let mut next: HashSet<(u64, u64)> = HashSet::new();
        for &(value, free) in &level {
            for i in 0..n {
                let bit = 1u64 << i;
                if free & bit != 0 || value & bit != 0 {
                    continue;
                }
                let partner = (value | bit, free);
                if level.contains(&partner) {
                    merged.insert((value, free));
                    merged.insert(partner);
                    next.insert((value, free | bit));
                }
            }
        }
        for &(value, free) in &level {
            if !merged.contains(&(value, free)) {
                let fixed = all & !free;
                primes.insert(Term::from_masks(value & fixed, !value & fixed));
            }
        }
        level = next;
    }
    primes
}

fn resolve(a: &Term, b: &Term) -> Option<Term> {
    let clash = (a.pos & b.neg) | (a.neg & b.pos);
    if clash.count_ones() != 1 {
        return None;
    }
    Some(Term::from_masks((a.pos | b.pos) & !clash, (a.neg | b.neg) & !clash))
}

/// Blake canonical form of the function represented by the DNF `d`:
/// iterated consensus with absorption. Zero-terms and the constant-0 term
/// denote empty cubes and are dropped first.
pub fn prime_implicants_consensus(d: &TermSet) -> TermSet {
    let mut cubes: Vec<Term> = d
        .iter()
        .filter(|t| !t.is_zero_term() && t.const_val != Some(false))
        .copied()
        .collect();
    if cubes.contains(&Term::ONE) {
        return [Term::ONE].into();
    }
    cubes = absorb(cubes);

    let mut i = 0;
    while i < cubes.len() {
        let mut j = 0;
        while j < i {
            if let Some(c) = resolve(&cubes[i], &cubes[j]) {
                if !cubes.iter().any(|t| t.subsumes(&c)) {
                    cubes.retain(|t| !c.subsumes(t));
                    cubes.push(c);
                    // Indices shifted; rescan from the start.
                    i = 0;
                    j = 0;
                    continue;
                }
            }
            j += 1;
        }
        i += 1;
    }
    cubes.into_iter().collect()
}

fn absorb(mut cubes: Vec<Term>) -> Vec<Term> {
    cubes.sort_by_key(Term::len);
    cubes.dedup();
    let mut kept: Vec<Term> = Vec::new();
    for t in cubes {
        if !kept.iter().any(|k| k.subsumes(&t)) {
            kept.push(t);
        }
    }
    kept
}

/// Prime implicates of `f`: the duals of the prime implicants of `f^d`.
pub fn prime_implicates(f: &TruthTable) -> ClauseSet {
    prime_implicants_qmc(&f.dual()).iter().map(Term::dual).collect()
}

pub fn upwards_closure(f: &TruthTable) -> TruthTable {
    f.upwards_closure()
}
