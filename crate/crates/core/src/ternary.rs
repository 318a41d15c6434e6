//! Ternary evaluation of circuits, ternary extensions of Boolean functions
//! and hazard derivatives.
//!
//! Exhaustive enumeration uses a lexicographic index over `{0,u,1}^n`:
//! variable 0 is the most significant base-3 digit and digits map
//! `0 → 0, u → 1, 1 → 2`, so index order equals the sort order of
//! [`TriVector`].

use std::ops::Range;

use crate::circuit::{Circuit, Node};
use crate::error::{Error, Result};
use crate::tri::{Tri, TriVector};
use crate::truth_table::TruthTable;

/// Largest arity for which the full ternary space is enumerated.
pub const MAX_ENUM_ARITY: usize = 12;

pub fn tri_and(a: Tri, b: Tri) -> Tri {
    a.and(b)
}

pub fn tri_or(a: Tri, b: Tri) -> Tri {
    a.or(b)
}

pub fn tri_not(a: Tri) -> Tri {
    a.not()
}

fn check_arity(c: &Circuit, got: usize) -> Result<()> {
    if c.arity() != got {
        return Err(Error::ArityMismatch { expected: c.arity(), got });
    }
    Ok(())
}

/// Gate-by-gate evaluation under Kleene's strong logic.
pub fn eval_ternary(c: &Circuit, alpha: &TriVector) -> Result<Tri> {
    check_arity(c, alpha.len())?;
    Ok(eval_nodes(c, alpha)[c.output()])
}

/// Ternary value of every node of `c`.
pub fn eval_nodes(c: &Circuit, alpha: &TriVector) -> Vec<Tri> {
    let mut val = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let v = match *node {
            Node::Input(l) => {
                let t = alpha.get(l.var);
                if l.negated {
                    t.not()
                } else {
                    t
                }
            }
            Node::Const(b) => Tri::from_bool(b),
            Node::And(a, b) => val[a] & val[b],
            Node::Or(a, b) => val[a] | val[b],
        };
        val.push(v);
    }
    val
}

pub fn refines(alpha: &TriVector, beta: &TriVector) -> bool {
    crate::tri::refines(alpha, beta)
}

pub fn ternary_space_size(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// The vector at lexicographic index `idx` of `{0,u,1}^n`.
pub fn vector_at(n: usize, mut idx: usize) -> TriVector {
    let mut v = vec![Tri::Zero; n];
    for i in (0..n).rev() {
        v[i] = Tri::ALL[idx % 3];
        idx /= 3;
    }
    TriVector(v)
}

pub fn index_of(v: &TriVector) -> usize {
    v.entries().iter().fold(0, |acc, t| {
        acc * 3
            + match t {
                Tri::Zero => 0,
                Tri::Unstable => 1,
                Tri::One => 2,
            }
    })
}

/// 64 ternary values packed as two planes: `hi` marks lanes that may be 1,
/// `lo` lanes that may be 0. `u` sets both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DualRail {
    pub hi: u64,
    pub lo: u64,
}

impl std::ops::Not for DualRail {
    type Output = DualRail;

    fn not(self) -> DualRail {
        DualRail { hi: self.lo, lo: self.hi }
    }
}

impl DualRail {
    pub const ONE: DualRail = DualRail { hi: !0, lo: 0 };
    pub const ZERO: DualRail = DualRail { hi: 0, lo: !0 };

    pub fn and(self, o: DualRail) -> DualRail {
        DualRail { hi: self.hi & o.hi, lo: self.lo | o.lo }
    }

    pub fn or(self, o: DualRail) -> DualRail {
        DualRail { hi: self.hi | o.hi, lo: self.lo & o.lo }
    }

    pub fn lane(self, i: usize) -> Tri {
        match (self.hi >> i & 1, self.lo >> i & 1) {
            (1, 0) => Tri::One,
            (0, 1) => Tri::Zero,
            _ => Tri::Unstable,
        }
    }

    pub fn set_lane(&mut self, i: usize, t: Tri) {
        let bit = 1u64 << i;
        self.hi &= !bit;
        self.lo &= !bit;
        match t {
            Tri::One => self.hi |= bit,
            Tri::Zero => self.lo |= bit,
            Tri::Unstable => {
                self.hi |= bit;
                self.lo |= bit;
            }
        }
    }
}

/// Evaluates every node on up to 64 input vectors at once.
pub fn eval_nodes_packed(c: &Circuit, inputs: &[DualRail], out: &mut Vec<DualRail>) {
    out.clear();
    for node in c.nodes() {
        let v = match *node {
            Node::Input(l) => {
                let r = inputs[l.var];
                if l.negated {
                    !r
                } else {
                    r
                }
            }
            Node::Const(true) => DualRail::ONE,
            Node::Const(false) => DualRail::ZERO,
            Node::And(a, b) => out[a].and(out[b]),
            Node::Or(a, b) => out[a].or(out[b]),
        };
        out.push(v);
    }
}

/// Packs the vectors with lexicographic indices `start..start+lanes`.
pub fn pack_range(n: usize, start: usize, lanes: usize) -> Vec<DualRail> {
    let mut rails = vec![DualRail::default(); n];
    for lane in 0..lanes {
        let mut idx = start + lane;
        for i in (0..n).rev() {
            rails[i].set_lane(lane, Tri::ALL[idx % 3]);
            idx /= 3;
        }
    }
    rails
}

/// Output values of `c` on an arbitrary list of vectors of matching length.
pub fn eval_ternary_many(c: &Circuit, vectors: &[TriVector]) -> Vec<Tri> {
    let n = c.arity();
    let mut result = Vec::with_capacity(vectors.len());
    let mut scratch = Vec::with_capacity(c.nodes().len());
    for chunk in vectors.chunks(64) {
        let mut rails = vec![DualRail::default(); n];
        for (lane, v) in chunk.iter().enumerate() {
            for (i, rail) in rails.iter_mut().enumerate() {
                rail.set_lane(lane, v.get(i));
            }
        }
        eval_nodes_packed(c, &rails, &mut scratch);
        let out = scratch[c.output()];
        result.extend((0..chunk.len()).map(|l| out.lane(l)));
    }
    result
}

/// Output values of `c` on the lexicographic index range `range`.
pub fn eval_ternary_range(c: &Circuit, range: Range<usize>) -> Vec<Tri> {
    let n = c.arity();
    let mut result = Vec::with_capacity(range.len());
    let mut scratch = Vec::with_capacity(c.nodes().len());
    let mut start = range.start;
    while start < range.end {
        let lanes = (range.end - start).min(64);
        let rails = pack_range(n, start, lanes);
        eval_nodes_packed(c, &rails, &mut scratch);
        let out = scratch[c.output()];
        result.extend((0..lanes).map(|l| out.lane(l)));
        start += lanes;
    }
    result
}

/// Output values of `c` on all of `{0,u,1}^n` in lexicographic order.
pub fn eval_ternary_all(c: &Circuit) -> Result<Vec<Tri>> {
    let n = c.arity();
    if n > MAX_ENUM_ARITY {
        return Err(Error::ArityTooLarge { arity: n, max: MAX_ENUM_ARITY });
    }
    Ok(eval_ternary_range(c, 0..ternary_space_size(n)))
}

/// The ternary extension of `f`: at `α` it is `ε` when `f(S_α) = {ε}` and
/// `u` otherwise. Indexed lexicographically.
pub fn ternary_extension(f: &TruthTable) -> Result<Vec<Tri>> {
    let n = f.arity();
    if n > MAX_ENUM_ARITY {
        return Err(Error::ArityTooLarge { arity: n, max: MAX_ENUM_ARITY });
    }
    // Start binary with variable 0 as the most significant digit, then widen
    // one digit at a time from the least significant variable upwards.
    let mut cur: Vec<Tri> = (0..1usize << n)
        .map(|b| {
            let a = (0..n).fold(0u64, |a, i| a | ((b >> (n - 1 - i) & 1) as u64) << i);
            Tri::from_bool(f.get(a))
        })
        .collect();
    for var in (0..n).rev() {
        let low = 3usize.pow((n - 1 - var) as u32);
        let high = 1usize << var;
        let mut next = Vec::with_capacity(high * 3 * low);
        for h in 0..high {
            let zero = &cur[(2 * h) * low..(2 * h + 1) * low];
            let one = &cur[(2 * h + 1) * low..(2 * h + 2) * low];
            next.extend_from_slice(zero);
            next.extend(zero.iter().zip(one).map(|(&a, &b)| if a == b { a } else { Tri::Unstable }));
            next.extend_from_slice(one);
        }
        cur = next;
    }
    Ok(cur)
}

/// `ã(x)`: entry `i` is `a_i` where `x_i = 0` and `u` where `x_i = 1`.
pub fn unstable_shift(a: &[bool], x: &[bool]) -> TriVector {
    TriVector(
        a.iter()
            .zip(x)
            .map(|(&ai, &xi)| if xi { Tri::Unstable } else { Tri::from_bool(ai) })
            .collect(),
    )
}

/// Hazard derivative of the ternary function computed by `c` at point `a`
/// in direction `x`: `1` iff `c` outputs `u` on `ã(x)`.
pub fn hazard_derivative_circuit(c: &Circuit, a: &[bool], x: &[bool]) -> Result<bool> {
    check_arity(c, a.len())?;
    check_arity(c, x.len())?;
    let fa = c.eval_boolean(a)?;
    match eval_ternary(c, &unstable_shift(a, x))? {
        Tri::Unstable => Ok(true),
        t if t == Tri::from_bool(fa) => Ok(false),
        t => Err(Error::InternalContractViolation(format!(
            "ternary output {t} contradicts the Boolean value {}",
            u8::from(fa)
        ))),
    }
}

/// `df/da(x) = 0` iff `f(a ⊕ z) = f(a)` for every `z ≤ x`.
pub fn hazard_derivative_function(f: &TruthTable, a: &[bool], x: &[bool]) -> Result<bool> {
    for v in [a.len(), x.len()] {
        if v != f.arity() {
            return Err(Error::ArityMismatch { expected: f.arity(), got: v });
        }
    }
    let ai = crate::truth_table::index_of(a);
    let xi = crate::truth_table::index_of(x);
    let fa = f.get(ai);
    // Enumerate the submasks z of x.
    let mut z = xi;
    loop {
        if f.get(ai ^ z) != fa {
            return Ok(true);
        }
        if z == 0 {
            return Ok(false);
        }
        z = (z - 1) & xi;
    }
}
