//! Syntactic production of the formal DNF and formal CNF of a circuit.
//!
//! At a leaf the produced cube is the literal or constant itself. For terms,
//! an OR gate takes the union of its operands' sets and an AND gate all
//! pairwise conjunctions; clauses swap the two roles. No absorption and no
//! annihilation is ever applied, so zero-terms and one-clauses survive.

use std::collections::{BTreeSet, HashSet};
use std::hash::Hash;

use crate::circuit::{Circuit, Literal, Node};
use crate::cubes::{Clause, ClauseSet, Term, TermSet};
use crate::error::{Error, Result};

pub const DEFAULT_PRODUCED_CAP: usize = 1_000_000;

trait Produced: Copy + Ord + Hash {
    fn leaf_literal(l: Literal) -> Self;
    fn leaf_const(v: bool) -> Self;
    fn combine(&self, o: &Self) -> Self;
}

impl Produced for Term {
    fn leaf_literal(l: Literal) -> Self {
        Term::literal(l)
    }
    fn leaf_const(v: bool) -> Self {
        Term::constant(v)
    }
    fn combine(&self, o: &Self) -> Self {
        self.and(o)
    }
}

impl Produced for Clause {
    fn leaf_literal(l: Literal) -> Self {
        Clause::literal(l)
    }
    fn leaf_const(v: bool) -> Self {
        Clause::constant(v)
    }
    fn combine(&self, o: &Self) -> Self {
        self.or(o)
    }
}

fn produce<C: Produced>(c: &Circuit, product_at_and: bool, cap: usize) -> Result<BTreeSet<C>> {
    let nodes = c.nodes();
    let live = c.reachable();
    // Remaining readers per node, so intermediate sets can be dropped early.
    let mut readers = vec![0usize; nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        if let (true, Some((a, b))) = (live[id], node.operands()) {
            readers[a] += 1;
            readers[b] += 1;
        }
    }
    readers[c.output()] += 1;

    let overflow = || Error::ProducedSetOverflow { limit: cap };
    let mut sets: Vec<Option<Vec<C>>> = vec![None; nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        if !live[id] {
            continue;
        }
        let set: Vec<C> = match *node {
            Node::Input(l) => vec![C::leaf_literal(l)],
            Node::Const(v) => vec![C::leaf_const(v)],
            Node::And(a, b) | Node::Or(a, b) => {
                let is_product = matches!(node, Node::And(..)) == product_at_and;
                let (sa, sb) = (sets[a].as_ref().unwrap(), sets[b].as_ref().unwrap());
                let mut out = if is_product {
                    let mut acc = HashSet::new();
                    for x in sa {
                        for y in sb {
                            acc.insert(x.combine(y));
                            if acc.len() > cap {
                                return Err(overflow());
                            }
                        }
                    }
                    acc.into_iter().collect::<Vec<_>>()
                } else {
                    sa.iter().chain(sb).copied().collect()
                };
                out.sort_unstable();
                out.dedup();
                if out.len() > cap {
                    return Err(overflow());
                }
                for x in [a, b] {
                    readers[x] -= 1;
                    if readers[x] == 0 {
                        sets[x] = None;
                    }
                }
                out
            }
        };
        sets[id] = Some(set);
    }
    Ok(sets[c.output()].take().unwrap().into_iter().collect())
}

/// The set of terms produced at the output, capped at [`DEFAULT_PRODUCED_CAP`].
pub fn formal_dnf(c: &Circuit) -> Result<TermSet> {
    formal_dnf_capped(c, DEFAULT_PRODUCED_CAP)
}

pub fn formal_dnf_capped(c: &Circuit, cap: usize) -> Result<TermSet> {
    produce(c, true, cap)
}

/// The set of clauses produced at the output, capped at [`DEFAULT_PRODUCED_CAP`].
pub fn formal_cnf(c: &Circuit) -> Result<ClauseSet> {
    formal_cnf_capped(c, DEFAULT_PRODUCED_CAP)
}

pub fn formal_cnf_capped(c: &Circuit, cap: usize) -> Result<ClauseSet> {
    produce(c, false, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::parse_expr;

    fn dnf_text(e: &str) -> Vec<String> {
        let c = parse_expr(e).unwrap();
        formal_dnf(&c).unwrap().iter().map(|t| t.to_text(c.names())).collect()
    }

    fn cnf_text(e: &str) -> Vec<String> {
        let c = parse_expr(e).unwrap();
        formal_cnf(&c).unwrap().iter().map(|t| t.to_text(c.names())).collect()
    }

    #[test]
    fn produced_terms_keep_zero_terms() {
        assert_eq!(dnf_text("(x|~z)&(y|z)"), ["xy", "xz", "y~z", "z~z"]);
        assert_eq!(dnf_text("x"), ["x"]);
        assert_eq!(cnf_text("x"), ["x"]);
    }

    #[test]
    fn produced_clauses() {
        assert_eq!(cnf_text("x&(~y|~z) | ~x&y"), ["x~x", "xy", "~x~y~z", "y~y~z"]);
    }

    #[test]
    fn constants_follow_cube_rules() {
        assert_eq!(dnf_text("x & 0 | y"), ["0", "y"]);
        assert_eq!(dnf_text("x & 1"), ["x"]);
        assert_eq!(cnf_text("x | 1"), ["1"]);
        assert_eq!(dnf_text("x | ~x"), ["x", "~x"]);
        assert_eq!(dnf_text("1 | x"), ["1", "x"]);
    }

    #[test]
    fn cap_is_an_error() {
        let c = parse_expr("(a|b)&(c|d)&(e|f)").unwrap();
        assert_eq!(formal_dnf_capped(&c, 8).unwrap().len(), 8);
        assert_eq!(formal_dnf_capped(&c, 7), Err(Error::ProducedSetOverflow { limit: 7 }));
    }
}
