//! Text formats for circuits: the line-oriented netlist and infix expressions.
//!
//! ```text
//! # multiplexer
//! inputs x y z
//! g1 = AND x z
//! g2 = AND y ~z
//! g3 = OR g1 g2
//! output g3
//! ```
//!
//! Gates with more than two operands are expanded left-associatively.

use std::collections::{HashMap, HashSet};

use crate::circuit::{Circuit, CircuitBuilder, Literal, Node, NodeId, MAX_INPUTS};
use crate::error::{Error, Result};

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

pub fn parse_netlist(text: &str) -> Result<Circuit> {
    let mut builder: Option<CircuitBuilder> = None;
    let mut inputs: HashMap<String, usize> = HashMap::new();
    let mut gates: HashMap<String, NodeId> = HashMap::new();
    let mut output: Option<NodeId> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").replace('=', " = ");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = tokens.first() else { continue };

        if output.is_some() {
            return Err(syntax(line, "statement after `output`"));
        }

        if head == "inputs" {
            if builder.is_some() {
                return Err(syntax(line, "`inputs` given more than once"));
            }
            let names = &tokens[1..];
            if names.is_empty() {
                return Err(syntax(line, "`inputs` needs at least one name"));
            }
            if names.len() > MAX_INPUTS {
                return Err(Error::ArityTooLarge { arity: names.len(), max: MAX_INPUTS });
            }
            for (i, &name) in names.iter().enumerate() {
                if !is_identifier(name) {
                    return Err(syntax(line, format!("`{name}` is not a valid input name")));
                }
                if inputs.insert(name.to_string(), i).is_some() {
                    return Err(syntax(line, format!("input `{name}` declared twice")));
                }
            }
            builder = Some(CircuitBuilder::new(names.iter().map(|s| s.to_string()).collect()));
            continue;
        }

        let Some(b) = builder.as_mut() else {
            return Err(syntax(line, "the first statement must be `inputs`"));
        };

        let operand = |b: &mut CircuitBuilder, tok: &str, current: Option<&str>| -> Result<NodeId> {
            if let Some(name) = tok.strip_prefix('~') {
                return match inputs.get(name) {
                    Some(&v) => Ok(b.neg(v)),
                    None if gates.contains_key(name) || current == Some(name) => {
                        Err(Error::NegationOnGate { line, name: name.to_string() })
                    }
                    None => Err(Error::UnknownIdentifier { line, name: name.to_string() }),
                };
            }
            match tok {
                "0" => Ok(b.constant(false)),
                "1" => Ok(b.constant(true)),
                _ => {
                    if let Some(&v) = inputs.get(tok) {
                        Ok(b.var(v))
                    } else if let Some(&g) = gates.get(tok) {
                        Ok(g)
                    } else {
                        Err(Error::UnknownIdentifier { line, name: tok.to_string() })
                    }
                }
            }
        };

        if head == "output" {
            if tokens.len() != 2 {
                return Err(syntax(line, "`output` takes exactly one operand"));
            }
            output = Some(operand(b, tokens[1], None)?);
            continue;
        }

        if tokens.len() < 2 || tokens[1] != "=" {
            return Err(syntax(line, "expected `<gate> = AND|OR <operands>`"));
        }
        if !is_identifier(head) {
            return Err(syntax(line, format!("`{head}` is not a valid gate name")));
        }
        if inputs.contains_key(head) || gates.contains_key(head) {
            return Err(syntax(line, format!("`{head}` is already defined")));
        }
        let is_and = match tokens.get(2).map(|t| t.to_ascii_uppercase()) {
            Some(op) if op == "AND" => true,
            Some(op) if op == "OR" => false,
            _ => return Err(syntax(line, "gate type must be AND or OR")),
        };
        let ops = &tokens[3..];
        if ops.len() < 2 {
            return Err(syntax(line, "a gate needs at least two operands"));
        }
        let ids = ops
            .iter()
            .map(|t| operand(b, t, Some(head)))
            .collect::<Result<Vec<_>>>()?;
        let id = if is_and { b.and_all(&ids) } else { b.or_all(&ids) };
        gates.insert(head.to_string(), id);
    }

    let builder = builder.ok_or_else(|| syntax(1, "missing `inputs` statement"))?;
    let output = output.ok_or(Error::NoOutput)?;
    Ok(builder.finish(output))
}

/// Writes the reachable part of `c` as a netlist. Re-parsing yields a
/// circuit with the same function and the same gate count.
pub fn write_netlist(c: &Circuit) -> String {
    let c = c.pruned();
    let taken: HashSet<&str> = c.names().iter().map(String::as_str).collect();
    let mut prefix = String::from("g");
    while taken.iter().any(|n| {
        n.strip_prefix(prefix.as_str())
            .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
    }) {
        prefix.insert(0, '_');
    }

    let mut out = String::new();
    out.push_str("inputs");
    for n in c.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');

    let mut label: Vec<String> = Vec::with_capacity(c.nodes().len());
    let mut next = 1;
    for node in c.nodes() {
        let name = match *node {
            Node::Input(l) => c.literal_name(l),
            Node::Const(v) => if v { "1" } else { "0" }.to_string(),
            Node::And(a, b) | Node::Or(a, b) => {
                let g = format!("{prefix}{next}");
                next += 1;
                let op = if matches!(node, Node::And(..)) { "AND" } else { "OR" };
                out.push_str(&format!("{g} = {op} {} {}\n", label[a], label[b]));
                g
            }
        };
        label.push(name);
    }
    out.push_str(&format!("output {}\n", label[c.output()]));
    out
}

#[derive(Debug, Clone)]
enum Expr {
    Var(String, bool),
    Const(bool),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        syntax(1, format!("{msg} at column {} in `{}`", self.pos + 1, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            lhs = Expr::Or(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            lhs = Expr::And(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('~') => {
                self.pos += 1;
                match self.ident() {
                    Some(name) if is_identifier(&name) => Ok(Expr::Var(name, true)),
                    _ => Err(Error::NegationOnGate { line: 1, name: self.src.to_string() }),
                }
            }
            Some(_) => match self.ident() {
                Some(tok) if tok == "0" => Ok(Expr::Const(false)),
                Some(tok) if tok == "1" => Ok(Expr::Const(true)),
                Some(tok) if is_identifier(&tok) => Ok(Expr::Var(tok, false)),
                _ => Err(self.err("expected a variable, constant or `(`")),
            },
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn collect_vars(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Var(n, _) => {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
        Expr::Const(_) => {}
        Expr::And(a, b) | Expr::Or(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

/// Orders `x2` before `x10`.
fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, num) = name.split_at(name.len() - digits);
    (stem.to_string(), num.parse().unwrap_or(0), name.to_string())
}

/// Parses an infix expression over `&`, `|`, `~` (inputs only), `0`, `1`
/// and parentheses. Variables are ordered by name, digits compared numerically.
pub fn parse_expr(text: &str) -> Result<Circuit> {
    let mut p = ExprParser { chars: text.chars().collect(), pos: 0, src: text };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let mut names = Vec::new();
    collect_vars(&e, &mut names);
    names.sort_by_key(|n| natural_key(n));
    if names.len() > MAX_INPUTS {
        return Err(Error::ArityTooLarge { arity: names.len(), max: MAX_INPUTS });
    }
    let index: HashMap<String, usize> =
        names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let mut b = CircuitBuilder::new(names);
    fn build(b: &mut CircuitBuilder, e: &Expr, index: &HashMap<String, usize>) -> NodeId {
        match e {
            Expr::Var(n, neg) => b.input(Literal { var: index[n], negated: *neg }),
            Expr::Const(v) => b.constant(*v),
            Expr::And(l, r) => {
                let (l, r) = (build(b, l, index), build(b, r, index));
                b.and(l, r)
            }
            Expr::Or(l, r) => {
                let (l, r) = (build(b, l, index), build(b, r, index));
                b.or(l, r)
            }
        }
    }
    let out = build(&mut b, &e, &index);
    Ok(b.finish(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MUX: &str = "inputs x y z\ng1 = AND x z\ng2 = AND y ~z\ng3 = OR g1 g2\noutput g3";

    #[test]
    fn parses_multiplexer() {
        let c = parse_netlist(MUX).unwrap();
        assert_eq!(c.arity(), 3);
        assert_eq!(c.stats().size, 3);
        assert!(c.eval_boolean(&[true, true, false]).unwrap());
    }

    #[test]
    fn identity_circuit() {
        let c = parse_netlist("inputs x\noutput x").unwrap();
        assert_eq!(c.stats().size, 0);
        assert_eq!(c.stats().depth, 0);
    }

    #[test]
    fn negated_gate_is_rejected() {
        let err = parse_netlist("inputs x\ng1 = AND ~g1 x\noutput g1").unwrap_err();
        assert!(matches!(err, Error::NegationOnGate { line: 2, .. }), "{err:?}");
        let err = parse_netlist("inputs x y\ng1 = AND x y\ng2 = OR ~g1 x\noutput g2").unwrap_err();
        assert!(matches!(err, Error::NegationOnGate { line: 3, .. }));
    }

    #[test]
    fn error_cases() {
        assert!(matches!(
            parse_netlist("inputs x\ng1 = AND x q\noutput g1"),
            Err(Error::UnknownIdentifier { line: 2, .. })
        ));
        assert_eq!(parse_netlist("inputs x\ng1 = AND x x"), Err(Error::NoOutput));
        assert!(matches!(parse_netlist("g1 = AND x x"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_netlist("inputs x\noutput x\ng1 = AND x x"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_netlist("inputs x\ng1 = XOR x x\noutput g1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_netlist("inputs x\ng1 = AND x\noutput g1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_netlist("inputs x x\noutput x"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn wide_gates_expand_left() {
        let c = parse_netlist("inputs a b c\ng = AND a b c\noutput g").unwrap();
        assert_eq!(c.stats().size, 2);
        assert_eq!(c.stats().depth, 2);
        let n = c.nodes();
        assert!(matches!(n[c.output()], Node::And(l, _) if matches!(n[l], Node::And(..))));
    }

    #[test]
    fn comments_and_constants() {
        let text = "# test\ninputs x # vars\ng1 = OR x 0 # or\ng2 = AND g1 1\noutput g2\n";
        let c = parse_netlist(text).unwrap();
        assert_eq!(c.truth_table().unwrap().bit_string(), "01");
    }

    #[test]
    fn round_trip() {
        let c = parse_netlist(MUX).unwrap();
        let text = write_netlist(&c);
        let d = parse_netlist(&text).unwrap();
        assert_eq!(d.truth_table().unwrap(), c.truth_table().unwrap());
        assert_eq!(d.stats(), c.stats());
        assert_eq!(write_netlist(&d), text);
    }

    #[test]
    fn gate_prefix_avoids_input_names() {
        let c = parse_netlist("inputs g1 g2\nh = AND g1 g2\noutput h").unwrap();
        let text = write_netlist(&c);
        assert!(text.contains("_g1 = AND g1 g2"), "{text}");
        assert_eq!(parse_netlist(&text).unwrap().truth_table(), c.truth_table());
    }

    #[test]
    fn expressions() {
        let c = parse_expr("(x|~z)&(y|z)").unwrap();
        assert_eq!(c.names(), ["x", "y", "z"]);
        assert_eq!(c.stats().size, 3);
        let m = parse_netlist(MUX).unwrap();
        assert_eq!(c.truth_table().unwrap(), m.truth_table().unwrap());
        assert!(matches!(parse_expr("~(x&y)"), Err(Error::NegationOnGate { .. })));
        assert!(parse_expr("x &").is_err());
        assert!(parse_expr("x y").is_err());
        let w = parse_expr("x10 & x2 | x1").unwrap();
        assert_eq!(w.names(), ["x1", "x2", "x10"]);
    }
}
