//! Command-line front end for `ghz-distill`.
//!
//! Every subcommand reads a state file and prints a JSON envelope
//!
//! ```text
//! {"command", "input_label", "result", "diagnostics": {"tolerances", "seed", "timings_ms"}}
//! ```
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 invariant failure,
//! 4 state not in the GHZ class.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ghz_distill::EntanglementClass;

pub mod commands;
pub mod json;
pub mod state_file;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Parse(String),

    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("GHZ not distillable from {}", class_phrase(.0))]
    NotDistillable(EntanglementClass),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::NotDistillable(_) => 4,
        }
    }
}

impl From<ghz_distill::Error> for CliError {
    fn from(e: ghz_distill::Error) -> Self {
        use ghz_distill::Error as E;
        match e {
            E::NotGhzClass(c) => CliError::NotDistillable(c),
            E::ZeroVector(_) | E::PreconditionViolated(_) | E::InfeasibleX { .. } => CliError::Usage(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

fn class_phrase(c: &EntanglementClass) -> String {
    match c {
        EntanglementClass::FullyProduct => "fully product states".into(),
        EntanglementClass::Biseparable(p) => format!("biseparable class ({p} separable)"),
        EntanglementClass::WClass => "W class".into(),
        EntanglementClass::GhzClass => "GHZ class".into(),
    }
}

#[derive(Debug, Parser)]
#[command(name = "ghz-distill", version, about = "Optimal GHZ distillation from three-qubit pure states")]
pub struct Cli {
    /// Relative rank tolerance used for classification.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Indented output.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Record wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// State file: {"amps": [[re, im] x 8], "label": "..."}, index 4a+2b+c.
    pub state_file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entanglement class with rank and product-vector evidence.
    Classify(Input),
    /// Optimal one-successful-branch protocol and its POVMs.
    Distill(Input),
    /// Monte Carlo run of the optimal protocol.
    Simulate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Check that local measurements never raise the optimal probability on average.
    Audit {
        #[command(flatten)]
        input: Input,
        /// Random two-outcome POVMs per party.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..), conflicts_with = "diagonal_scan")]
        povms: u64,
        /// Sweep the diagonal balanced family on Alice with this many points.
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        diagonal_scan: Option<u64>,
    },
    /// Best GHZ fidelity reachable with local unitaries.
    Fidelity {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = ghz_distill::fidelity::DEFAULT_RESTARTS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        restarts: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Distill(_) => "distill",
            Command::Simulate { .. } => "simulate",
            Command::Audit { .. } => "audit",
            Command::Fidelity { .. } => "fidelity",
        }
    }

    fn input(&self) -> &Input {
        match self {
            Command::Classify(i) | Command::Distill(i) => i,
            Command::Simulate { input, .. } | Command::Audit { input, .. } | Command::Fidelity { input, .. } => input,
        }
    }
}

/// Runs one parsed invocation and returns the envelope.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let start = Instant::now();
    let file = state_file::read(&cli.command.input().state_file)?;
    if file.renormalized() {
        eprintln!(
            "warning: {}: amplitude norm {} differs from 1, renormalized",
            file.label, file.stored_norm
        );
    }
    let s = &file.state;
    let result = match &cli.command {
        Command::Classify(_) => commands::classify(s, cli.tol)?,
        Command::Distill(_) => commands::distill(s, cli.tol)?,
        Command::Simulate { trials, .. } => commands::simulate(s, cli.tol, *trials, cli.seed)?,
        Command::Audit {
            diagonal_scan: Some(steps),
            ..
        } => commands::audit_diagonal(s, cli.tol, *steps as usize)?,
        Command::Audit { povms, .. } => commands::audit_random(s, cli.tol, *povms as usize, cli.seed)?,
        Command::Fidelity { restarts, .. } => commands::fidelity(s, *restarts, cli.seed)?,
    };
    let timings = if cli.timings {
        json!({ "total": json::real(start.elapsed().as_secs_f64() * 1e3) })
    } else {
        Value::Null
    };
    Ok(json!({
        "command": cli.command.name(),
        "input_label": file.label,
        "result": result,
        "diagnostics": {
            "tolerances": commands::tolerances(cli.tol),
            "seed": cli.seed,
            "timings_ms": timings,
        },
    }))
}

pub fn render(envelope: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(envelope)
    } else {
        serde_json::to_string(envelope)
    }
    .expect("JSON values always serialize")
}

/// Parses the arguments, runs the command and returns the process exit code.
pub fn run_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(env) => {
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{}", render(&env, cli.pretty));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
