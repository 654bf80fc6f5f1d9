//! Command-line front end for `bifix-core`.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 `--verify`
//! disagreement, 4 identity failure. Data goes to stdout; diagnostics to
//! stderr.

pub mod commands;
pub mod config;
pub mod output;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::config::RunConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] bifix_core::Error),
    #[error("formula and hitting-time oracle disagree for {0}")]
    VerifyMismatch(String),
    #[error("{0} identity instance(s) failed")]
    IdentityFailure(usize),
}

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_VERIFY_MISMATCH: u8 = 3;
pub const EXIT_IDENTITY_FAILURE: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Core(_) => EXIT_CONFIG,
            CliError::VerifyMismatch(_) => EXIT_VERIFY_MISMATCH,
            CliError::IdentityFailure(_) => EXIT_IDENTITY_FAILURE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bifix",
    version,
    about = "Exact expected waiting times for patterns in random letter streams"
)]
pub struct Cli {
    /// JSON config with `alphabet` and `probabilities`; `-` reads stdin.
    #[arg(long, global = true, value_name = "PATH|-")]
    pub config: Option<String>,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected waiting time of each pattern, with its border chain.
    Expect(ExpectArgs),
    /// Expected additional waiting time for a pattern given a history.
    Conditional(ConditionalArgs),
    /// Seeded Monte Carlo estimate of the expected waiting time.
    Simulate(SimulateArgs),
    /// Exhaustive checks of F1, F2, the S_n recurrence and the lemmas.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Args)]
pub struct ExpectArgs {
    /// Pattern in alphabet symbols; repeatable. `""` is the empty word.
    #[arg(
        long = "pattern",
        value_name = "WORD",
        required = true,
        allow_hyphen_values = true
    )]
    pub patterns: Vec<String>,
    /// Cross-check against the exact hitting-time oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct ConditionalArgs {
    #[arg(long, value_name = "WORD")]
    pub pattern: String,
    /// History already observed; defaults to the empty word.
    #[arg(long, value_name = "WORD", default_value = "")]
    pub given: String,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_name = "WORD")]
    pub pattern: String,
    #[arg(long, value_name = "N", default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,
    /// Per-trial step cap (default: 1000 * ceil(E(w))).
    #[arg(long, value_name = "N")]
    pub max_steps: Option<u64>,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Longest word for the F1 and lemma sweeps.
    #[arg(long, value_name = "N", default_value_t = 6)]
    pub max_len: usize,
    /// Word length for F2 and the S_n recurrence.
    #[arg(long = "n", value_name = "N", default_value_t = 6)]
    pub n: usize,
    /// Maximum number of words one enumeration may visit.
    #[arg(long, value_name = "N", default_value_t = bifix_core::identities::DEFAULT_BUDGET)]
    pub budget: u128,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| CliError::Config("--config PATH|- is required".into()))?;
    let config = RunConfig::load(path)?;
    let json = cli.json;
    let work = || {
        let mut out = String::new();
        let result = match &cli.command {
            Command::Expect(args) => commands::expect(&config, args, json, &mut out),
            Command::Conditional(args) => commands::conditional(&config, args, json, &mut out),
            Command::Simulate(args) => commands::simulate(&config, args, json, &mut out),
            Command::Identities(args) => commands::identities(&config, args, json, &mut out),
        };
        (out, result)
    };
    let (out, result) = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    // reports are written even when the run ends in a verify or identity failure
    print!("{out}");
    result
}
