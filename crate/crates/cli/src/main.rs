mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "hazard", version, about = "Static hazard analysis and hazard-free synthesis for DeMorgan circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct InputArgs {
    /// Netlist or `.tt` file, `family:<name>:<params>`, or an infix expression.
    pub input: Option<String>,
    /// Infix expression over `&`, `|`, `~` and parentheses.
    #[arg(long)]
    pub expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Detect static hazards.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = CheckMethod::All)]
        method: CheckMethod,
        /// Exit nonzero unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Synthesize a hazard-free circuit for the input's function.
    Synth {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = SynthMethod::Shannon)]
        method: SynthMethod,
        /// Arity of the shared block for the consensus recursion.
        #[arg(long)]
        m: Option<usize>,
        /// Write the netlist here, with metadata in `<out>.meta.json`.
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = hazard_core::synthesis::DEFAULT_GATE_BUDGET)]
        budget: usize,
    },
    /// Print a derived object of the input.
    Show {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        what: What,
        /// Base point for `derivative`, one bit per input.
        #[arg(long)]
        a: Option<String>,
        /// Direction for `derivative`, one bit per input.
        #[arg(long)]
        x: Option<String>,
    },
    /// Compare a family circuit with hazard-free circuits for its function.
    Gap { family: String },
    /// Run the worked-example golden suite and a seeded randomized check.
    Selftest {
        #[arg(long, default_value_t = hazard_core::random::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMethod {
    Oracle,
    PrimeWitness,
    Structural,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    HazardFree,
    Hazard,
    #[value(name = "0-hazard")]
    ZeroHazard,
    #[value(name = "1-hazard")]
    OneHazard,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthMethod {
    Huffman,
    Shannon,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Dnf,
    Cnf,
    Primes,
    Implicates,
    Closure,
    Dual,
    Monotone,
    Derivative,
}

/// A failure reported as an error document on standard error.
#[derive(Debug)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    pub exit: u8,
}

impl Failure {
    pub fn new(kind: &str, message: impl Into<String>, exit: u8) -> Self {
        Failure { kind: kind.to_string(), message: message.into(), exit }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new("Usage", message, 2)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure::new("Io", message, 1)
    }

    fn document(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool": tool(),
            "error": { "kind": self.kind, "message": self.message },
        })
    }
}

impl From<hazard_core::Error> for Failure {
    fn from(e: hazard_core::Error) -> Self {
        Failure::new(e.kind(), e.to_string(), 1)
    }
}

pub fn tool() -> Value {
    json!({ "name": "hazard", "version": env!("CARGO_PKG_VERSION") })
}

/// The document to print and, when the run should still fail, the reason.
pub struct Outcome {
    pub document: Value,
    pub failure: Option<Failure>,
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Check { input, method, expect } => commands::check(&input, method, expect),
        Command::Synth { input, method, m, output, budget } => {
            commands::synth(&input, method, m, output.as_deref(), budget)
        }
        Command::Show { input, what, a, x } => commands::show(&input, what, a.as_deref(), x.as_deref()),
        Command::Gap { family } => commands::gap(&family),
        Command::Selftest { seed, count } => commands::selftest(seed, count),
    }
}

fn emit_failure(f: &Failure) -> ExitCode {
    let text = serde_json::to_string_pretty(&f.document()).expect("serializable");
    let _ = writeln!(std::io::stderr(), "{text}");
    ExitCode::from(f.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let message = e.to_string().trim_end().to_string();
            return emit_failure(&Failure::usage(message));
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.document).expect("serializable");
            // A closed stdout is not an analysis failure.
            let _ = writeln!(std::io::stdout(), "{text}");
            match outcome.failure {
                Some(f) => emit_failure(&f),
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => emit_failure(&f),
    }
}
