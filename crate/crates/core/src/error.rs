use thiserror::Error;

/// Errors raised by circuit construction, analysis and synthesis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: negation applied to `{name}`, which is not an input")]
    NegationOnGate { line: usize, name: String },

    #[error("line {line}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, name: String },

    #[error("netlist has no `output` statement")]
    NoOutput,

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("arity {arity} exceeds the limit {max} for this operation")]
    ArityTooLarge { arity: usize, max: usize },

    #[error("arity {arity} outside the supported range {min}..={max}")]
    ArityOutOfRange { arity: usize, min: usize, max: usize },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("produced set exceeds the cap of {limit} cubes")]
    ProducedSetOverflow { limit: usize },

    #[error("zero-terms are never implicants")]
    ZeroTermNotImplicant,

    #[error("one-clauses are never implicates")]
    OneClauseNotImplicate,

    #[error("vector {0} is not a prime witness of the computed function")]
    NotPrimeWitness(String),

    #[error("gate budget of {budget} exceeded")]
    GateBudgetExceeded { budget: usize },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid truth table: {0}")]
    InvalidTruthTable(String),

    #[error("invalid cube text: {0}")]
    InvalidCube(String),

    #[error("invalid ternary vector: {0}")]
    InvalidVector(String),

    #[error("internal contract violation: {0}")]
    InternalContractViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable identifier of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "Syntax",
            Error::NegationOnGate { .. } => "NegationOnGate",
            Error::UnknownIdentifier { .. } => "UnknownIdentifier",
            Error::NoOutput => "NoOutput",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::ArityTooLarge { .. } => "ArityTooLarge",
            Error::ArityOutOfRange { .. } => "ArityOutOfRange",
            Error::ParamOutOfRange(_) => "ParamOutOfRange",
            Error::ProducedSetOverflow { .. } => "ProducedSetOverflow",
            Error::ZeroTermNotImplicant => "ZeroTermNotImplicant",
            Error::OneClauseNotImplicate => "OneClauseNotImplicate",
            Error::NotPrimeWitness(_) => "NotPrimeWitness",
            Error::GateBudgetExceeded { .. } => "GateBudgetExceeded",
            Error::InvalidCircuit(_) => "InvalidCircuit",
            Error::InvalidTruthTable(_) => "InvalidTruthTable",
            Error::InvalidCube(_) => "InvalidCube",
            Error::InvalidVector(_) => "InvalidVector",
            Error::InternalContractViolation(_) => "InternalContractViolation",
        }
    }
}
