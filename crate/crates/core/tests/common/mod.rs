//! Reference implementations used as independent oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hazard_core::{Circuit, Node, TruthTable};

/// Ternary values as halves: 0, 1 (for `u`) and 2.
pub type Half = u8;

pub fn eval_halves(c: &Circuit, alpha: &[Half]) -> Half {
    let mut val: Vec<Half> = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let v = match *node {
            Node::Input(l) => {
                let x = alpha[l.var];
                if l.negated {
                    2 - x
                } else {
                    x
                }
            }
            Node::Const(b) => 2 * u8::from(b),
            Node::And(a, b) => val[a].min(val[b]),
            Node::Or(a, b) => val[a].max(val[b]),
        };
        val.push(v);
    }
    val[c.output()]
}

pub fn all_vectors(n: usize) -> Vec<Vec<Half>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..3).map(move |d| {
                let mut w = v.clone();
                w.push(d);
                w
            }))
            .collect();
    }
    out
}

pub fn render(alpha: &[Half]) -> String {
    alpha.iter().map(|&h| ['0', 'u', '1'][h as usize]).collect()
}

/// Boolean points of the subcube of `alpha`, as bit vectors.
pub fn resolutions(alpha: &[Half]) -> Vec<Vec<bool>> {
    let mut out = vec![vec![]];
    for &h in alpha {
        let choices: &[bool] = match h {
            0 => &[false],
            2 => &[true],
            _ => &[false, true],
        };
        out = out
            .into_iter()
            .flat_map(|v| choices.iter().map(move |&b| {
                let mut w = v.clone();
                w.push(b);
                w
            }))
            .collect();
    }
    out
}

/// Every `(vector, polarity)` at which `c` has a hazard, by definition.
pub fn naive_hazards(c: &Circuit) -> BTreeSet<(String, bool)> {
    let mut out = BTreeSet::new();
    for alpha in all_vectors(c.arity()) {
        if !alpha.contains(&1) || eval_halves(c, &alpha) != 1 {
            continue;
        }
        let values: BTreeSet<bool> =
            resolutions(&alpha).iter().map(|a| c.eval_boolean(a).unwrap()).collect();
        if values.len() == 1 {
            out.insert((render(&alpha), *values.iter().next().unwrap()));
        }
    }
    out
}

fn bits(a: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| a >> i & 1 == 1).collect()
}

/// Prime implicants as `(pos, neg)` masks: implicants none of whose
/// one-literal-shorter subterms is an implicant.
pub fn naive_primes(f: &TruthTable) -> BTreeSet<(u64, u64)> {
    let n = f.arity();
    let implicant = |pos: u64, neg: u64| {
        (0..1u64 << n).all(|a| !(a & pos == pos && a & neg == 0) || f.get(a))
    };
    let mut out = BTreeSet::new();
    for alpha in all_vectors(n) {
        let (mut pos, mut neg) = (0u64, 0u64);
        for (i, &h) in alpha.iter().enumerate() {
            match h {
                0 => neg |= 1 << i,
                2 => pos |= 1 << i,
                _ => {}
            }
        }
        if !implicant(pos, neg) || f.is_const(false) {
            continue;
        }
        let shorter = (0..n).any(|i| {
            let bit = 1 << i;
            (pos & bit != 0 && implicant(pos & !bit, neg))
                || (neg & bit != 0 && implicant(pos, neg & !bit))
        });
        if !shorter {
            out.insert((pos, neg));
        }
    }
    out
}

pub fn eval_bits(c: &Circuit, a: u64) -> bool {
    c.eval_boolean(&bits(a, c.arity())).unwrap()
}

pub fn popcount_table(m: usize, k: usize) -> TruthTable {
    TruthTable::from_fn(m, |a| a.count_ones() as usize == k).unwrap()
}

/// Graphs on `m` vertices (edges in lexicographic order) that consist of a
/// `k`-clique and isolated vertices.
pub fn is_exact_clique(m: usize, k: usize, a: u64) -> bool {
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            edges.push((i, j));
        }
    }
    let present: Vec<(usize, usize)> =
        edges.iter().enumerate().filter(|(e, _)| a >> e & 1 == 1).map(|(_, &p)| p).collect();
    // Try every vertex set of size k as the clique.
    (0u32..1 << m).filter(|s| s.count_ones() as usize == k).any(|s| {
        let inside = |v: usize| s >> v & 1 == 1;
        let want: Vec<(usize, usize)> =
            edges.iter().copied().filter(|&(i, j)| inside(i) && inside(j)).collect();
        want == present
    })
}

pub fn is_permutation_matrix(m: usize, a: u64) -> bool {
    let cell = |i: usize, j: usize| a >> (i * m + j) & 1 == 1;
    (0..m).all(|i| (0..m).filter(|&j| cell(i, j)).count() == 1)
        && (0..m).all(|j| (0..m).filter(|&i| cell(i, j)).count() == 1)
}

pub fn factorial(m: u64) -> u64 {
    (1..=m).product()
}

/// Circuits from the worked examples, as expressions.
pub const GOLDEN_EXPRS: &[&str] = &[
    "x&z | y&~z",
    "(x|~z)&(y|z)",
    "x&(y|z) | y&~z",
    "y&~z | x&(~y | ~x&y)",
    "x&(~y|~z) | ~x&y",
    "(~x|y)&(y|~z) | x&y&z",
    "x & ~x",
    "x | ~x",
    "x",
    "~x",
];
