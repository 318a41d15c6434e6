//! Resolution of command-line inputs into circuits or bare functions.

use std::fs;
use std::path::Path;

use hazard_core::families::FamilySpec;
use hazard_core::netlist::{parse_expr, parse_netlist};
use hazard_core::{Circuit, TruthTable};
use serde_json::{json, Value};

use crate::Failure;

pub enum Loaded {
    Circuit(Circuit),
    Function(TruthTable),
}

pub struct Input {
    pub loaded: Loaded,
    pub descriptor: Value,
}

impl Input {
    pub fn circuit(&self) -> Result<&Circuit, Failure> {
        match &self.loaded {
            Loaded::Circuit(c) => Ok(c),
            Loaded::Function(_) => Err(Failure::usage(
                "a truth table describes a function, not a circuit; synthesize one first",
            )),
        }
    }

    pub fn function(&self) -> Result<TruthTable, Failure> {
        match &self.loaded {
            Loaded::Circuit(c) => Ok(c.truth_table()?),
            Loaded::Function(f) => Ok(f.clone()),
        }
    }

    pub fn names(&self) -> Option<Vec<String>> {
        match &self.loaded {
            Loaded::Circuit(c) => Some(c.names().to_vec()),
            Loaded::Function(_) => None,
        }
    }
}

/// `family:…` selects a generator, an existing path is read by extension
/// (`.tt` is a truth table, anything else a netlist), and any other text is
/// parsed as an infix expression.
pub fn load(positional: Option<&str>, expr: Option<&str>) -> Result<Input, Failure> {
    match (positional, expr) {
        (Some(_), Some(_)) => Err(Failure::usage("give either an input or --expr, not both")),
        (None, None) => Err(Failure::usage("no input given")),
        (None, Some(e)) => from_expr(e),
        (Some(s), None) if s.starts_with("family:") => {
            let spec: FamilySpec = s.parse()?;
            Ok(Input {
                loaded: Loaded::Circuit(spec.build()?),
                descriptor: json!({ "kind": "family", "spec": spec.to_string() }),
            })
        }
        (Some(s), None) if Path::new(s).is_file() => from_file(Path::new(s)),
        (Some(s), None) => from_expr(s),
    }
}

fn from_expr(e: &str) -> Result<Input, Failure> {
    Ok(Input {
        loaded: Loaded::Circuit(parse_expr(e)?),
        descriptor: json!({ "kind": "expression", "expr": e }),
    })
}

fn from_file(path: &Path) -> Result<Input, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    let is_tt = path.extension().is_some_and(|x| x == "tt");
    let loaded = if is_tt {
        Loaded::Function(TruthTable::parse_tt(&text)?)
    } else {
        Loaded::Circuit(parse_netlist(&text)?)
    };
    let format = if is_tt { "truth-table" } else { "netlist" };
    Ok(Input {
        loaded,
        descriptor: json!({ "kind": "file", "path": path.display().to_string(), "format": format }),
    })
}
