//! Kleene's strong three-valued logic over `{0, u, 1}`.
//!
//! `0` and `1` are stable, `u` is unstable. The ordering derived on [`Tri`]
//! is `0 < u < 1`, which is also the order used to sort witness vectors.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    Zero,
    Unstable,
    One,
}

impl Tri {
    pub const ALL: [Tri; 3] = [Tri::Zero, Tri::Unstable, Tri::One];

    pub const fn from_bool(b: bool) -> Tri {
        if b {
            Tri::One
        } else {
            Tri::Zero
        }
    }

    pub const fn is_stable(self) -> bool {
        !matches!(self, Tri::Unstable)
    }

    pub const fn to_bool(self) -> Option<bool> {
        match self {
            Tri::Zero => Some(false),
            Tri::One => Some(true),
            Tri::Unstable => None,
        }
    }

    pub const fn and(self, rhs: Tri) -> Tri {
        match (self, rhs) {
            (Tri::Zero, _) | (_, Tri::Zero) => Tri::Zero,
            (Tri::One, Tri::One) => Tri::One,
            _ => Tri::Unstable,
        }
    }

    pub const fn or(self, rhs: Tri) -> Tri {
        match (self, rhs) {
            (Tri::One, _) | (_, Tri::One) => Tri::One,
            (Tri::Zero, Tri::Zero) => Tri::Zero,
            _ => Tri::Unstable,
        }
    }

    pub const fn not(self) -> Tri {
        match self {
            Tri::Zero => Tri::One,
            Tri::Unstable => Tri::Unstable,
            Tri::One => Tri::Zero,
        }
    }

    /// The value as a point of `{0, 1/2, 1}`.
    pub const fn as_half(self) -> f64 {
        match self {
            Tri::Zero => 0.0,
            Tri::Unstable => 0.5,
            Tri::One => 1.0,
        }
    }

    pub const fn to_char(self) -> char {
        match self {
            Tri::Zero => '0',
            Tri::Unstable => 'u',
            Tri::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Tri> {
        match c {
            '0' => Some(Tri::Zero),
            '1' => Some(Tri::One),
            'u' | 'U' => Some(Tri::Unstable),
            _ => None,
        }
    }
}

impl BitAnd for Tri {
    type Output = Tri;
    fn bitand(self, rhs: Tri) -> Tri {
        self.and(rhs)
    }
}

impl BitOr for Tri {
    type Output = Tri;
    fn bitor(self, rhs: Tri) -> Tri {
        self.or(rhs)
    }
}

impl Not for Tri {
    type Output = Tri;
    fn not(self) -> Tri {
        Tri::not(self)
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Tri {
        Tri::from_bool(b)
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A ternary input vector; position `i` is variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TriVector(pub Vec<Tri>);

impl TriVector {
    pub fn new(entries: Vec<Tri>) -> Self {
        TriVector(entries)
    }

    pub fn all_unstable(n: usize) -> Self {
        TriVector(vec![Tri::Unstable; n])
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        TriVector(bits.iter().map(|&b| Tri::from_bool(b)).collect())
    }

    /// Stable vector for the little-endian truth-table index `a`.
    pub fn from_index(n: usize, a: u64) -> Self {
        TriVector((0..n).map(|i| Tri::from_bool(a >> i & 1 == 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Tri] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Tri {
        self.0[i]
    }

    pub fn unstable_count(&self) -> usize {
        self.0.iter().filter(|t| !t.is_stable()).count()
    }

    pub fn is_stable(&self) -> bool {
        self.0.iter().all(|t| t.is_stable())
    }

    /// Componentwise complement; `u` stays `u`.
    pub fn complement(&self) -> TriVector {
        TriVector(self.0.iter().map(|t| t.not()).collect())
    }

    /// Bitmask of the unstable positions.
    pub fn unstable_mask(&self) -> u64 {
        self.mask_of(Tri::Unstable)
    }

    /// Bitmask of positions holding `1`.
    pub fn ones_mask(&self) -> u64 {
        self.mask_of(Tri::One)
    }

    /// Bitmask of positions holding `0`.
    pub fn zeros_mask(&self) -> u64 {
        self.mask_of(Tri::Zero)
    }

    fn mask_of(&self, v: Tri) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == v)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// True iff `other` arises from `self` by resolving some unstable entries.
    pub fn refines_to(&self, other: &TriVector) -> bool {
        refines(self, other)
    }

    pub fn subcube(&self) -> Subcube {
        Subcube::new(self.clone())
    }
}

impl fmt::Display for TriVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for TriVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| Tri::from_char(c).ok_or_else(|| Error::InvalidVector(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(TriVector)
    }
}

impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.to_char())
    }
}

impl Serialize for TriVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TriVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `α ⊑ β`: `β` is obtained from `α` by replacing some `u` entries with stable bits.
pub fn refines(alpha: &TriVector, beta: &TriVector) -> bool {
    alpha.len() == beta.len()
        && alpha
            .0
            .iter()
            .zip(&beta.0)
            .all(|(&a, &b)| a == Tri::Unstable || a == b)
}

/// The Boolean subcube `S_α` of all resolutions of a ternary vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcube {
    base: TriVector,
}

impl Subcube {
    pub fn new(base: TriVector) -> Self {
        Subcube { base }
    }

    pub fn base(&self) -> &TriVector {
        &self.base
    }

    pub fn len(&self) -> u64 {
        1 << self.base.unstable_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Resolutions as little-endian truth-table indices, lexicographic over
    /// the unstable positions (first `u` most significant, `0` before `1`).
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        let free: Vec<usize> = (0..self.base.len())
            .filter(|&i| self.base.get(i) == Tri::Unstable)
            .collect();
        let fixed = self.base.ones_mask();
        let k = free.len();
        (0..1u64 << k).map(move |r| {
            let mut a = fixed;
            for (j, &pos) in free.iter().enumerate() {
                if r >> (k - 1 - j) & 1 == 1 {
                    a |= 1 << pos;
                }
            }
            a
        })
    }

    /// Resolutions as bit-vectors, in the same order as [`Subcube::indices`].
    pub fn resolutions(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        let n = self.base.len();
        self.indices()
            .map(move |a| (0..n).map(|i| a >> i & 1 == 1).collect())
    }

    pub fn contains(&self, bits: &[bool]) -> bool {
        refines(&self.base, &TriVector::from_bits(bits))
    }
}
