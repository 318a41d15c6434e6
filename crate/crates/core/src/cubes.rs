//! Terms (ANDs of literals) and clauses (ORs of literals) as bitmask cubes.
//!
//! A cube is a *set* of literals: `x ∧ x = x`, but `x ∧ x̄` is kept as a
//! zero-term (dually `x ∨ x̄` as a one-clause). Constant cubes carry no
//! literals; the constant-0 term is not a zero-term.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::circuit::{default_names, Literal};
use crate::error::{Error, Result};
use crate::tri::{Tri, TriVector};
use crate::truth_table::TruthTable;

fn literal_keys(pos: u64, neg: u64) -> impl Iterator<Item = u32> {
    let all = pos | neg;
    (0..64u32)
        .filter(move |i| all >> i & 1 == 1)
        .flat_map(move |i| {
            let p = (pos >> i & 1 == 1).then_some(2 * i);
            let n = (neg >> i & 1 == 1).then_some(2 * i + 1);
            p.into_iter().chain(n)
        })
}

fn literals_of(pos: u64, neg: u64) -> Vec<Literal> {
    literal_keys(pos, neg)
        .map(|k| Literal { var: (k / 2) as usize, negated: k % 2 == 1 })
        .collect()
}

/// Constants first (0 before 1), then by literal sequence with `x_i < x̄_i < x_{i+1}`.
fn cube_cmp(a: (Option<bool>, u64, u64), b: (Option<bool>, u64, u64)) -> Ordering {
    match (a.0, b.0) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => literal_keys(a.1, a.2).cmp(literal_keys(b.1, b.2)),
    }
}

fn render(pos: u64, neg: u64, names: &[String]) -> String {
    let mut s = String::new();
    for l in literals_of(pos, neg) {
        if l.negated {
            s.push('~');
        }
        s.push_str(&names[l.var]);
    }
    s
}

/// Parses juxtaposed literals (`x1~x3`) by longest match against `names`.
fn parse_literals(text: &str, names: &[String]) -> Result<(u64, u64)> {
    let mut rest = text.trim();
    let (mut pos, mut neg) = (0u64, 0u64);
    if rest.is_empty() {
        return Err(Error::InvalidCube("empty cube".into()));
    }
    while !rest.is_empty() {
        let negated = rest.starts_with('~');
        if negated {
            rest = &rest[1..];
        }
        let (var, name) = names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len())
            .ok_or_else(|| Error::InvalidCube(format!("unknown literal in `{text}`")))?;
        if negated {
            neg |= 1 << var;
        } else {
            pos |= 1 << var;
        }
        rest = &rest[name.len()..];
    }
    Ok((pos, neg))
}

fn max_var(pos: u64, neg: u64) -> usize {
    64 - (pos | neg).leading_zeros() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u64,
    pub neg: u64,
    pub const_val: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Clause {
    pub pos: u64,
    pub neg: u64,
    pub const_val: Option<bool>,
}

pub type TermSet = BTreeSet<Term>;
pub type ClauseSet = BTreeSet<Clause>;

impl Ord for Term {
    fn cmp(&self, o: &Self) -> Ordering {
        cube_cmp((self.const_val, self.pos, self.neg), (o.const_val, o.pos, o.neg))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Clause {
    fn cmp(&self, o: &Self) -> Ordering {
        cube_cmp((self.const_val, self.pos, self.neg), (o.const_val, o.pos, o.neg))
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Term {
    pub const ONE: Term = Term { pos: 0, neg: 0, const_val: Some(true) };
    pub const ZERO: Term = Term { pos: 0, neg: 0, const_val: Some(false) };

    pub fn constant(v: bool) -> Term {
        if v {
            Term::ONE
        } else {
            Term::ZERO
        }
    }

    /// The empty literal set is the constant-1 term.
    pub fn from_masks(pos: u64, neg: u64) -> Term {
        if pos | neg == 0 {
            Term::ONE
        } else {
            Term { pos, neg, const_val: None }
        }
    }

    pub fn literal(l: Literal) -> Term {
        if l.negated {
            Term::from_masks(0, 1 << l.var)
        } else {
            Term::from_masks(1 << l.var, 0)
        }
    }

    pub fn from_literals(lits: &[Literal]) -> Term {
        lits.iter().fold(Term::ONE, |t, &l| t.and(&Term::literal(l)))
    }

    /// Conjunction without annihilation: `0 ∧ t = 0`, `1 ∧ t = t`,
    /// otherwise the union of literal sets.
    pub fn and(&self, o: &Term) -> Term {
        match (self.const_val, o.const_val) {
            (Some(false), _) | (_, Some(false)) => Term::ZERO,
            (Some(true), _) => *o,
            (_, Some(true)) => *self,
            _ => Term::from_masks(self.pos | o.pos, self.neg | o.neg),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.const_val.is_some()
    }

    /// Contains some variable together with its negation.
    pub fn is_zero_term(&self) -> bool {
        self.pos & self.neg != 0
    }

    pub fn literals(&self) -> Vec<Literal> {
        literals_of(self.pos, self.neg)
    }

    pub fn len(&self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Smallest arity the term fits in.
    pub fn min_arity(&self) -> usize {
        max_var(self.pos, self.neg)
    }

    pub fn eval_index(&self, a: u64) -> bool {
        match self.const_val {
            Some(v) => v,
            None => a & self.pos == self.pos && a & self.neg == 0,
        }
    }

    pub fn eval_ternary(&self, alpha: &TriVector) -> Tri {
        if let Some(v) = self.const_val {
            return Tri::from_bool(v);
        }
        self.literals().iter().fold(Tri::One, |acc, l| {
            let t = alpha.get(l.var);
            acc & if l.negated { !t } else { t }
        })
    }

    /// `t⁺`: negated literals replaced with constant 1.
    pub fn positive_factor(&self) -> Term {
        match self.const_val {
            Some(_) => *self,
            None => Term::from_masks(self.pos, 0),
        }
    }

    /// Literal sets are disjoint.
    pub fn disjoint_from(&self, c: &Clause) -> bool {
        self.pos & c.pos == 0 && self.neg & c.neg == 0
    }

    /// `self`'s literal set is a subset of `o`'s (so `o ≤ self`).
    pub fn subsumes(&self, o: &Term) -> bool {
        match (self.const_val, o.const_val) {
            (Some(true), _) => true,
            (_, Some(false)) => true,
            (Some(false), _) | (_, Some(true)) => false,
            _ => self.pos & !o.pos == 0 && self.neg & !o.neg == 0,
        }
    }

    /// The clause with the same literal set; constants are complemented.
    pub fn dual(&self) -> Clause {
        Clause { pos: self.pos, neg: self.neg, const_val: self.const_val.map(|v| !v) }
    }

    pub fn to_text(&self, names: &[String]) -> String {
        match self.const_val {
            Some(v) => u8::from(v).to_string(),
            None => render(self.pos, self.neg, names),
        }
    }

    pub fn parse(text: &str, names: &[String]) -> Result<Term> {
        match text.trim() {
            "1" => Ok(Term::ONE),
            "0" => Ok(Term::ZERO),
            t => parse_literals(t, names).map(|(p, n)| Term::from_masks(p, n)),
        }
    }
}

impl Clause {
    pub const ONE: Clause = Clause { pos: 0, neg: 0, const_val: Some(true) };
    pub const ZERO: Clause = Clause { pos: 0, neg: 0, const_val: Some(false) };

    pub fn constant(v: bool) -> Clause {
        if v {
            Clause::ONE
        } else {
            Clause::ZERO
        }
    }

    /// The empty literal set is the constant-0 clause.
    pub fn from_masks(pos: u64, neg: u64) -> Clause {
        if pos | neg == 0 {
            Clause::ZERO
        } else {
            Clause { pos, neg, const_val: None }
        }
    }

    pub fn literal(l: Literal) -> Clause {
        let t = Term::literal(l);
        Clause::from_masks(t.pos, t.neg)
    }

    pub fn from_literals(lits: &[Literal]) -> Clause {
        lits.iter().fold(Clause::ZERO, |c, &l| c.or(&Clause::literal(l)))
    }

    /// Disjunction without annihilation: `1 ∨ c = 1`, `0 ∨ c = c`.
    pub fn or(&self, o: &Clause) -> Clause {
        match (self.const_val, o.const_val) {
            (Some(true), _) | (_, Some(true)) => Clause::ONE,
            (Some(false), _) => *o,
            (_, Some(false)) => *self,
            _ => Clause::from_masks(self.pos | o.pos, self.neg | o.neg),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.const_val.is_some()
    }

    pub fn is_one_clause(&self) -> bool {
        self.pos & self.neg != 0
    }

    pub fn literals(&self) -> Vec<Literal> {
        literals_of(self.pos, self.neg)
    }

    pub fn len(&self) -> usize {
        (self.pos.count_ones() + self.neg.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min_arity(&self) -> usize {
        max_var(self.pos, self.neg)
    }

    pub fn eval_index(&self, a: u64) -> bool {
        match self.const_val {
            Some(v) => v,
            None => a & self.pos != 0 || !a & self.neg != 0,
        }
    }

    pub fn eval_ternary(&self, alpha: &TriVector) -> Tri {
        if let Some(v) = self.const_val {
            return Tri::from_bool(v);
        }
        self.literals().iter().fold(Tri::Zero, |acc, l| {
            let t = alpha.get(l.var);
            acc | if l.negated { !t } else { t }
        })
    }

    pub fn disjoint_from(&self, t: &Term) -> bool {
        t.disjoint_from(self)
    }

    /// The term with the same literal set; constants are complemented.
    pub fn dual(&self) -> Term {
        Term { pos: self.pos, neg: self.neg, const_val: self.const_val.map(|v| !v) }
    }

    pub fn to_text(&self, names: &[String]) -> String {
        match self.const_val {
            Some(v) => u8::from(v).to_string(),
            None => render(self.pos, self.neg, names),
        }
    }

    /// Infix rendering, e.g. `x | ~z`.
    pub fn to_infix(&self, names: &[String]) -> String {
        match self.const_val {
            Some(v) => u8::from(v).to_string(),
            None => self
                .literals()
                .iter()
                .map(|l| {
                    if l.negated {
                        format!("~{}", names[l.var])
                    } else {
                        names[l.var].clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" | "),
        }
    }

    pub fn parse(text: &str, names: &[String]) -> Result<Clause> {
        match text.trim() {
            "1" => Ok(Clause::ONE),
            "0" => Ok(Clause::ZERO),
            t => parse_literals(t, names).map(|(p, n)| Clause::from_masks(p, n)),
        }
    }
}

/// `α∧`: the AND of `x_i^{α_i}` over the stable positions of `α`.
pub fn witness_term(alpha: &TriVector) -> Term {
    Term::from_masks(alpha.ones_mask(), alpha.zeros_mask())
}

/// `α∨`: the OR of `x_i^{1-α_i}` over the stable positions of `α`.
pub fn witness_clause(alpha: &TriVector) -> Clause {
    Clause::from_masks(alpha.zeros_mask(), alpha.ones_mask())
}

/// The ternary vector whose witness term is `t` (`u` off the literal set).
pub fn vector_of_term(t: &Term, n: usize) -> TriVector {
    TriVector(
        (0..n)
            .map(|i| match (t.pos >> i & 1, t.neg >> i & 1) {
                (1, 0) => Tri::One,
                (0, 1) => Tri::Zero,
                _ => Tri::Unstable,
            })
            .collect(),
    )
}

/// The ternary vector whose witness clause is `c`.
pub fn vector_of_clause(c: &Clause, n: usize) -> TriVector {
    vector_of_term(&c.dual(), n).complement()
}

pub fn positive_factor(t: &Term) -> Term {
    t.positive_factor()
}

fn check_fits(min_arity: usize, f: &TruthTable) -> Result<()> {
    if min_arity > f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: min_arity });
    }
    Ok(())
}

/// `t ≤ f`, checked over every row of `f`.
pub fn is_implicant(t: &Term, f: &TruthTable) -> Result<bool> {
    if t.is_zero_term() {
        return Err(Error::ZeroTermNotImplicant);
    }
    check_fits(t.min_arity(), f)?;
    Ok((0..f.len()).all(|a| !t.eval_index(a) || f.get(a)))
}

/// `f ≤ c`, checked over every row of `f`.
pub fn is_implicate(c: &Clause, f: &TruthTable) -> Result<bool> {
    if c.is_one_clause() {
        return Err(Error::OneClauseNotImplicate);
    }
    check_fits(c.min_arity(), f)?;
    Ok((0..f.len()).all(|a| c.eval_index(a) || !f.get(a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeKind {
    Dnf,
    Cnf,
}

fn write_cube_file<'a>(
    kind: &str,
    arity: usize,
    cubes: impl Iterator<Item = String> + 'a,
) -> String {
    let mut s = format!("{kind} n={arity}\n");
    for c in cubes {
        s.push_str(&c);
        s.push('\n');
    }
    s
}

/// One term per line under a `dnf n=<arity>` header, variables `x1..xn`.
pub fn write_dnf(arity: usize, terms: &TermSet) -> String {
    let names = default_names(arity);
    write_cube_file("dnf", arity, terms.iter().map(|t| t.to_text(&names)))
}

/// One clause per line under a `cnf n=<arity>` header, variables `x1..xn`.
pub fn write_cnf(arity: usize, clauses: &ClauseSet) -> String {
    let names = default_names(arity);
    write_cube_file("cnf", arity, clauses.iter().map(|c| c.to_text(&names)))
}

fn parse_header(text: &str) -> Result<(CubeKind, usize, Vec<&str>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::InvalidCube("missing header".into()))?;
    let (kind, rest) = if let Some(r) = header.strip_prefix("dnf") {
        (CubeKind::Dnf, r)
    } else if let Some(r) = header.strip_prefix("cnf") {
        (CubeKind::Cnf, r)
    } else {
        return Err(Error::InvalidCube(format!("bad header `{header}`")));
    };
    let arity = rest
        .trim()
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidCube(format!("bad header `{header}`")))?;
    Ok((kind, arity, lines.collect()))
}

pub fn parse_dnf(text: &str) -> Result<(usize, TermSet)> {
    let (kind, arity, lines) = parse_header(text)?;
    if kind != CubeKind::Dnf {
        return Err(Error::InvalidCube("expected a `dnf` header".into()));
    }
    let names = default_names(arity);
    let set = lines.iter().map(|l| Term::parse(l, &names)).collect::<Result<_>>()?;
    Ok((arity, set))
}

pub fn parse_cnf(text: &str) -> Result<(usize, ClauseSet)> {
    let (kind, arity, lines) = parse_header(text)?;
    if kind != CubeKind::Cnf {
        return Err(Error::InvalidCube("expected a `cnf` header".into()));
    }
    let names = default_names(arity);
    let set = lines.iter().map(|l| Clause::parse(l, &names)).collect::<Result<_>>()?;
    Ok((arity, set))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn t(s: &str) -> Term {
        Term::parse(s, &xyz()).unwrap()
    }

    #[test]
    fn zero_terms_and_constants() {
        assert!(t("z~z").is_zero_term());
        assert!(!Term::ZERO.is_zero_term());
        assert_eq!(t("xy").and(&Term::ZERO), Term::ZERO);
        assert_eq!(t("xy").and(&Term::ONE), t("xy"));
        assert_eq!(t("xy").and(&t("x")), t("xy"));
        assert!(Clause::parse("x~x", &xyz()).unwrap().is_one_clause());
        assert_eq!(Clause::parse("x", &xyz()).unwrap().or(&Clause::ONE), Clause::ONE);
    }

    #[test]
    fn ordering_matches_literal_sequence() {
        let set: TermSet = ["z~z", "y~z", "xz", "xy"].iter().map(|s| t(s)).collect();
        let rendered: Vec<String> = set.iter().map(|x| x.to_text(&xyz())).collect();
        assert_eq!(rendered, ["xy", "xz", "y~z", "z~z"]);
    }

    #[test]
    fn witness_cubes() {
        let names = default_names(4);
        let a: TriVector = "1u0u".parse().unwrap();
        assert_eq!(witness_term(&a).to_text(&names), "x1~x3");
        assert_eq!(witness_clause(&a).to_text(&names), "~x1x3");
        assert_eq!(witness_term(&a).eval_ternary(&a), Tri::One);
        assert_eq!(witness_clause(&a).eval_ternary(&a), Tri::Zero);
        assert_eq!(witness_term(&TriVector::all_unstable(3)), Term::ONE);
        assert_eq!(witness_clause(&TriVector::all_unstable(3)), Clause::ZERO);
        let b: TriVector = "01".parse().unwrap();
        assert_eq!(witness_term(&b).to_text(&default_names(2)), "~x1x2");
        assert_eq!(vector_of_term(&witness_term(&a), 4), a);
        assert_eq!(vector_of_clause(&witness_clause(&a), 4), a);
    }

    #[test]
    fn positive_factors() {
        let names = default_names(3);
        let p = |s: &str| Term::parse(s, &names).unwrap().positive_factor().to_text(&names);
        assert_eq!(p("x1~x2x3"), "x1x3");
        assert_eq!(p("~x1"), "1");
        assert_eq!(p("x1~x1x2"), "x1x2");
        assert_eq!(Term::ZERO.positive_factor(), Term::ZERO);
    }

    #[test]
    fn implicant_checks() {
        let mux = TruthTable::from_fn(3, |a| {
            let (x, y, z) = (a & 1 == 1, a & 2 == 2, a & 4 == 4);
            (x && z) || (y && !z)
        })
        .unwrap();
        assert!(is_implicant(&t("xz"), &mux).unwrap());
        assert!(!is_implicant(&t("x"), &mux).unwrap());
        assert!(!is_implicant(&Term::ONE, &mux).unwrap());
        assert_eq!(is_implicant(&t("x~x"), &mux), Err(Error::ZeroTermNotImplicant));
        let c = Clause::parse("xy", &xyz()).unwrap();
        assert!(is_implicate(&c, &mux).unwrap());
        assert!(!is_implicate(&Clause::parse("x", &xyz()).unwrap(), &mux).unwrap());
    }

    #[test]
    fn cube_files() {
        let set: TermSet = [Term::parse("x1~x3", &default_names(3)).unwrap(), Term::ONE].into();
        let text = write_dnf(3, &set);
        assert_eq!(text, "dnf n=3\n1\nx1~x3\n");
        assert_eq!(parse_dnf(&text).unwrap(), (3, set));
        assert!(parse_cnf(&text).is_err());
        let names = default_names(12);
        let long = Term::parse("x1x12~x10", &names).unwrap();
        assert_eq!(long.literals().len(), 3);
        assert_eq!(long.to_text(&names), "x1~x10x12");
    }

    #[test]
    fn subsumption() {
        assert!(t("x").subsumes(&t("xy")));
        assert!(!t("xy").subsumes(&t("x")));
        assert!(Term::ONE.subsumes(&t("x")));
        assert!(t("x").subsumes(&Term::ZERO));
    }
}
