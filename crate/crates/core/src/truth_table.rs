//! Boolean functions on at most [`MAX_ARITY`] variables as packed bit vectors.
//!
//! Bit `a` holds `f(a)` where the input vector is read little-endian:
//! variable `i` is bit `i` of the index `a`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

fn word_count(arity: usize) -> usize {
    (1usize << arity).div_ceil(64)
}

impl TruthTable {
    pub fn zero(arity: usize) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge { arity, max: MAX_ARITY });
        }
        Ok(TruthTable { arity, words: vec![0; word_count(arity)] })
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        let mut t = Self::zero(arity)?;
        if value {
            t.words.iter_mut().for_each(|w| *w = !0);
            t.mask_tail();
        }
        Ok(t)
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut t = Self::zero(arity)?;
        for a in 0..t.len() {
            if f(a) {
                t.set(a, true);
            }
        }
        Ok(t)
    }

    /// Builds a table for `arity ≤ 6` from the low `2^arity` bits of `bits`.
    pub fn from_u64(arity: usize, bits: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::ArityTooLarge { arity, max: 6 });
        }
        let mut t = Self::zero(arity)?;
        t.words[0] = bits;
        t.mask_tail();
        Ok(t)
    }

    /// Low word of the table; the full table when `arity ≤ 6`.
    pub fn as_u64(&self) -> u64 {
        self.words[0]
    }

    pub(crate) fn from_words(arity: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(arity));
        let mut t = TruthTable { arity, words };
        t.mask_tail();
        t
    }

    fn mask_tail(&mut self) {
        if self.arity < 6 {
            self.words[0] &= (1u64 << (1 << self.arity)) - 1;
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of rows, `2^arity`.
    pub fn len(&self) -> u64 {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, a: u64) -> bool {
        self.words[(a >> 6) as usize] >> (a & 63) & 1 == 1
    }

    pub fn set(&mut self, a: u64, v: bool) {
        let w = &mut self.words[(a >> 6) as usize];
        if v {
            *w |= 1 << (a & 63);
        } else {
            *w &= !(1 << (a & 63));
        }
    }

    pub fn eval(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: bits.len() });
        }
        Ok(self.get(index_of(bits)))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_const(&self, value: bool) -> bool {
        if value {
            self.count_ones() == self.len()
        } else {
            self.words.iter().all(|&w| w == 0)
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).filter(move |&a| self.get(a))
    }

    pub fn complement(&self) -> TruthTable {
        let mut t = TruthTable {
            arity: self.arity,
            words: self.words.iter().map(|w| !w).collect(),
        };
        t.mask_tail();
        t
    }

    /// `f^d(x) = ¬f(x̄)`.
    pub fn dual(&self) -> TruthTable {
        let mask = self.len() - 1;
        let mut t = TruthTable { arity: self.arity, words: vec![0; self.words.len()] };
        for a in 0..self.len() {
            if !self.get(a ^ mask) {
                t.set(a, true);
            }
        }
        t
    }

    pub fn is_monotone(&self) -> bool {
        self.upwards_closure() == *self
    }

    /// `f↑(x) = ⋁_{z ≤ x} f(z)`, computed as a subset-OR sweep per variable.
    pub fn upwards_closure(&self) -> TruthTable {
        let mut t = self.clone();
        for i in 0..self.arity {
            let bit = 1u64 << i;
            for a in 0..t.len() {
                if a & bit != 0 && t.get(a ^ bit) {
                    t.set(a, true);
                }
            }
        }
        t
    }

    /// Subfunction with variable `var` fixed to `value`; the result has one
    /// variable fewer and keeps the remaining variables in order.
    pub fn cofactor(&self, var: usize, value: bool) -> TruthTable {
        assert!(var < self.arity, "cofactor variable out of range");
        let n = self.arity - 1;
        let low = (1u64 << var) - 1;
        let mut t = TruthTable { arity: n, words: vec![0; word_count(n)] };
        for b in 0..(1u64 << n) {
            let a = (b & low) | ((b & !low) << 1) | (u64::from(value) << var);
            if self.get(a) {
                t.set(b, true);
            }
        }
        t
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.cofactor(var, false) != self.cofactor(var, true)
    }

    /// Parses the `.tt` text format: `n=<arity>` then `2^n` characters over `{0,1}`.
    pub fn parse_tt(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidTruthTable("missing header".into()))?;
        let arity: usize = header
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidTruthTable(format!("bad header `{header}`")))?;
        let body: String = lines.collect();
        let mut t = Self::zero(arity)?;
        if body.len() as u64 != t.len() {
            return Err(Error::InvalidTruthTable(format!(
                "expected {} bits, found {}",
                t.len(),
                body.len()
            )));
        }
        for (a, c) in body.chars().enumerate() {
            match c {
                '0' => {}
                '1' => t.set(a as u64, true),
                _ => return Err(Error::InvalidTruthTable(format!("bad character `{c}`"))),
            }
        }
        Ok(t)
    }

    pub fn to_tt(&self) -> String {
        format!("n={}\n{}\n", self.arity, self.bit_string())
    }

    pub fn bit_string(&self) -> String {
        (0..self.len()).map(|a| if self.get(a) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.arity, self.bit_string())
    }
}

/// Little-endian index of a bit-vector.
pub fn index_of(bits: &[bool]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |a, (i, &b)| a | (u64::from(b) << i))
}
