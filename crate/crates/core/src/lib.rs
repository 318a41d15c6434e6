//! Static hazard analysis and hazard-free synthesis for DeMorgan circuits
//! under Kleene three-valued logic.

pub mod circuit;
pub mod cubes;
pub mod error;
pub mod families;
pub mod golden;
pub mod hazard;
pub mod netlist;
pub mod primes;
pub mod produce;
pub mod random;
pub mod synthesis;
pub mod ternary;
pub mod tri;
pub mod truth_table;

pub use circuit::{Circuit, CircuitBuilder, CircuitStats, Literal, Node, NodeId};
pub use cubes::{Clause, ClauseSet, Term, TermSet};
pub use error::{Error, Result};
pub use hazard::{HazardReport, HazardWitness, Method, Polarity, PrimeWitness};
pub use tri::{Subcube, Tri, TriVector};
pub use truth_table::TruthTable;
