//! DeMorgan circuits: fanin-2 AND/OR DAGs over literals and constants.
//!
//! Node ids are a topological order: every gate refers only to nodes with a
//! strictly smaller id. Negation exists only inside [`Node::Input`].

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::truth_table::{TruthTable, MAX_ARITY};

/// Cube masks are `u64`, which bounds the number of circuit inputs.
pub const MAX_INPUTS: usize = 64;

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub const fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub const fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn eval(self, bits: &[bool]) -> bool {
        bits[self.var] != self.negated
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Input(Literal),
    Const(bool),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
}

impl Node {
    pub fn is_gate(&self) -> bool {
        matches!(self, Node::And(..) | Node::Or(..))
    }

    pub fn operands(&self) -> Option<(NodeId, NodeId)> {
        match *self {
            Node::And(a, b) | Node::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    names: Vec<String>,
    nodes: Vec<Node>,
    output: NodeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircuitStats {
    pub size: usize,
    pub depth: usize,
    pub n_negated_inputs: usize,
    pub is_monotone: bool,
}

/// `x1, …, xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl Circuit {
    /// Validates topological order, literal ranges and the output id.
    pub fn new(names: Vec<String>, nodes: Vec<Node>, output: NodeId) -> Result<Self> {
        if names.len() > MAX_INPUTS {
            return Err(Error::ArityTooLarge { arity: names.len(), max: MAX_INPUTS });
        }
        for (id, node) in nodes.iter().enumerate() {
            match *node {
                Node::Input(l) if l.var >= names.len() => {
                    return Err(Error::InvalidCircuit(format!(
                        "node {id} reads variable {} of an arity-{} circuit",
                        l.var,
                        names.len()
                    )));
                }
                Node::And(a, b) | Node::Or(a, b) if a >= id || b >= id => {
                    return Err(Error::InvalidCircuit(format!(
                        "node {id} refers to a node that does not precede it"
                    )));
                }
                _ => {}
            }
        }
        if output >= nodes.len() {
            return Err(Error::InvalidCircuit(format!("output {output} is not a node")));
        }
        Ok(Circuit { names, nodes, output })
    }

    pub fn with_arity(n: usize, nodes: Vec<Node>, output: NodeId) -> Result<Self> {
        Self::new(default_names(n), nodes, output)
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Circuit { names: default_names(arity), nodes: vec![Node::Const(value)], output: 0 }
    }

    pub fn literal(arity: usize, lit: Literal) -> Result<Self> {
        Self::with_arity(arity, vec![Node::Input(lit)], 0)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    /// Marks the nodes the output depends on.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[self.output] = true;
        for id in (0..self.nodes.len()).rev() {
            if seen[id] {
                if let Some((a, b)) = self.nodes[id].operands() {
                    seen[a] = true;
                    seen[b] = true;
                }
            }
        }
        seen
    }

    /// Drops nodes the output does not depend on, preserving relative order.
    pub fn pruned(&self) -> Circuit {
        let keep = self.reachable();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (id, node) in self.nodes.iter().enumerate() {
            if !keep[id] {
                continue;
            }
            remap[id] = nodes.len();
            nodes.push(match *node {
                Node::And(a, b) => Node::And(remap[a], remap[b]),
                Node::Or(a, b) => Node::Or(remap[a], remap[b]),
                leaf => leaf,
            });
        }
        Circuit { names: self.names.clone(), nodes, output: remap[self.output] }
    }

    /// Gate count, depth and negation usage of the part reachable from the output.
    pub fn stats(&self) -> CircuitStats {
        let keep = self.reachable();
        let mut depth = vec![0usize; self.nodes.len()];
        let mut size = 0;
        let mut n_negated_inputs = 0;
        for (id, node) in self.nodes.iter().enumerate() {
            if let Some((a, b)) = node.operands() {
                depth[id] = 1 + depth[a].max(depth[b]);
            }
            if !keep[id] {
                continue;
            }
            match node {
                Node::And(..) | Node::Or(..) => size += 1,
                Node::Input(l) if l.negated => n_negated_inputs += 1,
                _ => {}
            }
        }
        CircuitStats {
            size,
            depth: depth[self.output],
            n_negated_inputs,
            is_monotone: n_negated_inputs == 0,
        }
    }

    pub fn size(&self) -> usize {
        self.stats().size
    }

    pub fn eval_boolean(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: bits.len() });
        }
        let mut val = vec![false; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            val[id] = match *node {
                Node::Input(l) => l.eval(bits),
                Node::Const(c) => c,
                Node::And(a, b) => val[a] && val[b],
                Node::Or(a, b) => val[a] || val[b],
            };
        }
        Ok(val[self.output])
    }

    /// The computed Boolean function, evaluated 64 rows at a time.
    pub fn truth_table(&self) -> Result<TruthTable> {
        let n = self.arity();
        if n > MAX_ARITY {
            return Err(Error::ArityTooLarge { arity: n, max: MAX_ARITY });
        }
        let rows = 1u64 << n;
        let words = rows.div_ceil(64) as usize;
        let mut out = Vec::with_capacity(words);
        let mut val = vec![0u64; self.nodes.len()];
        for w in 0..words {
            for (id, node) in self.nodes.iter().enumerate() {
                val[id] = match *node {
                    Node::Input(l) => {
                        let v = variable_word(l.var, w as u64);
                        if l.negated {
                            !v
                        } else {
                            v
                        }
                    }
                    Node::Const(c) => {
                        if c {
                            !0
                        } else {
                            0
                        }
                    }
                    Node::And(a, b) => val[a] & val[b],
                    Node::Or(a, b) => val[a] | val[b],
                };
            }
            out.push(val[self.output]);
        }
        Ok(TruthTable::from_words(n, out))
    }

    /// `F^d`: AND and OR exchanged, constants complemented, literals unchanged.
    pub fn dual(&self) -> Circuit {
        let nodes = self
            .nodes
            .iter()
            .map(|node| match *node {
                Node::And(a, b) => Node::Or(a, b),
                Node::Or(a, b) => Node::And(a, b),
                Node::Const(c) => Node::Const(!c),
                lit => lit,
            })
            .collect();
        Circuit { names: self.names.clone(), nodes, output: self.output }
    }

    /// `F⁺`: every negated input literal replaced with constant 1.
    pub fn monotone_version(&self) -> Circuit {
        let nodes = self
            .nodes
            .iter()
            .map(|node| match *node {
                Node::Input(l) if l.negated => Node::Const(true),
                other => other,
            })
            .collect();
        Circuit { names: self.names.clone(), nodes, output: self.output }
    }

    /// Folds constants through gates (`0∧x = 0`, `1∧x = x`, and duals).
    /// Never applied implicitly: it changes the produced term and clause sets.
    pub fn propagate_constants(&self) -> Circuit {
        let mut b = CircuitBuilder::new(self.names.clone());
        let mut map = vec![0; self.nodes.len()];
        let mut konst: Vec<Option<bool>> = vec![None; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            let (new, k) = match *node {
                Node::Input(l) => (b.input(l), None),
                Node::Const(c) => (b.constant(c), Some(c)),
                Node::And(x, y) => match (konst[x], konst[y]) {
                    (Some(false), _) | (_, Some(false)) => (b.constant(false), Some(false)),
                    (Some(true), _) => (map[y], konst[y]),
                    (_, Some(true)) => (map[x], konst[x]),
                    _ => (b.and(map[x], map[y]), None),
                },
                Node::Or(x, y) => match (konst[x], konst[y]) {
                    (Some(true), _) | (_, Some(true)) => (b.constant(true), Some(true)),
                    (Some(false), _) => (map[y], konst[y]),
                    (_, Some(false)) => (map[x], konst[x]),
                    _ => (b.or(map[x], map[y]), None),
                },
            };
            map[id] = new;
            konst[id] = k;
        }
        b.finish(map[self.output]).pruned()
    }

    pub fn literal_name(&self, lit: Literal) -> String {
        let name = &self.names[lit.var];
        if lit.negated {
            format!("~{name}")
        } else {
            name.clone()
        }
    }
}

/// 64-row slice of the column for variable `var`, rows `64·w .. 64·w+63`.
pub(crate) fn variable_word(var: usize, w: u64) -> u64 {
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    if var < 6 {
        PATTERNS[var]
    } else if w >> (var - 6) & 1 == 1 {
        !0
    } else {
        0
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::netlist::write_netlist(self))
    }
}

/// Incremental circuit construction.
///
/// Leaves (literals and constants) are always shared. With structural
/// hashing enabled, identical gates are shared as well and the operands of
/// each gate are put in canonical order.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    names: Vec<String>,
    nodes: Vec<Node>,
    hashing: bool,
    index: HashMap<Node, NodeId>,
}

impl CircuitBuilder {
    pub fn new(names: Vec<String>) -> Self {
        CircuitBuilder { names, nodes: Vec::new(), hashing: false, index: HashMap::new() }
    }

    pub fn with_arity(n: usize) -> Self {
        Self::new(default_names(n))
    }

    pub fn hashed(mut self) -> Self {
        self.hashing = true;
        self
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn gate_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_gate()).count()
    }

    fn intern(&mut self, node: Node, share: bool) -> NodeId {
        if share {
            if let Some(&id) = self.index.get(&node) {
                return id;
            }
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        if share {
            self.index.insert(node, id);
        }
        id
    }

    pub fn input(&mut self, lit: Literal) -> NodeId {
        assert!(lit.var < self.names.len(), "literal variable out of range");
        self.intern(Node::Input(lit), true)
    }

    pub fn var(&mut self, var: usize) -> NodeId {
        self.input(Literal::pos(var))
    }

    pub fn neg(&mut self, var: usize) -> NodeId {
        self.input(Literal::neg(var))
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.intern(Node::Const(value), true)
    }

    fn gate(&mut self, and: bool, a: NodeId, b: NodeId) -> NodeId {
        assert!(a < self.nodes.len() && b < self.nodes.len(), "operand not yet built");
        let (a, b) = if self.hashing { (a.min(b), a.max(b)) } else { (a, b) };
        let node = if and { Node::And(a, b) } else { Node::Or(a, b) };
        let share = self.hashing;
        self.intern(node, share)
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.gate(true, a, b)
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.gate(false, a, b)
    }

    /// Left-associative AND; the empty conjunction is constant 1.
    pub fn and_all(&mut self, ops: &[NodeId]) -> NodeId {
        match ops.split_first() {
            None => self.constant(true),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &x| self.and(acc, x)),
        }
    }

    /// Left-associative OR; the empty disjunction is constant 0.
    pub fn or_all(&mut self, ops: &[NodeId]) -> NodeId {
        match ops.split_first() {
            None => self.constant(false),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &x| self.or(acc, x)),
        }
    }

    /// Balanced AND tree; the empty conjunction is constant 1.
    pub fn and_tree(&mut self, ops: &[NodeId]) -> NodeId {
        match ops.len() {
            0 => self.constant(true),
            1 => ops[0],
            len => {
                let (l, r) = ops.split_at(len / 2);
                let l = self.and_tree(l);
                let r = self.and_tree(r);
                self.and(l, r)
            }
        }
    }

    /// Balanced OR tree; the empty disjunction is constant 0.
    pub fn or_tree(&mut self, ops: &[NodeId]) -> NodeId {
        match ops.len() {
            0 => self.constant(false),
            1 => ops[0],
            len => {
                let (l, r) = ops.split_at(len / 2);
                let l = self.or_tree(l);
                let r = self.or_tree(r);
                self.or(l, r)
            }
        }
    }

    /// Copies every node of `c` into this builder; inputs map variable-for-variable.
    pub fn import(&mut self, c: &Circuit) -> NodeId {
        assert!(c.arity() <= self.arity(), "imported circuit has too many inputs");
        let mut map = Vec::with_capacity(c.nodes.len());
        for node in &c.nodes {
            let id = match *node {
                Node::Input(l) => self.input(l),
                Node::Const(v) => self.constant(v),
                Node::And(a, b) => self.and(map[a], map[b]),
                Node::Or(a, b) => self.or(map[a], map[b]),
            };
            map.push(id);
        }
        map[c.output]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn finish(self, output: NodeId) -> Circuit {
        assert!(output < self.nodes.len(), "output not yet built");
        Circuit { names: self.names, nodes: self.nodes, output }
    }

    /// A circuit over a snapshot of the nodes built so far.
    pub fn snapshot(&self, output: NodeId) -> Circuit {
        Circuit { names: self.names.clone(), nodes: self.nodes.clone(), output }
    }
}
