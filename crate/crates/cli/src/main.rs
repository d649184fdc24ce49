//! `fqmzv`: power sums, multizeta values and composition tools over `F_q[t]`.
//!
//! Exit codes: 0 success, 1 bad input, 2 disagreement or theorem
//! violation, 3 resource limit.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqmzv::Error;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "fqmzv", version, about = "Exact power sums and multizeta values over F_q[t]")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Omit the version banner.
    #[arg(long, global = true)]
    pub no_banner: bool,

    /// Largest base-p digit multiplicity accepted by composition enumeration.
    #[arg(long, global = true, default_value_t = 24)]
    pub max_multiplicity: u64,

    #[command(subcommand)]
    pub command: Command,
}

/// The field `F_q`, given as `--q` or as `--p` with `--f`.
#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree; defaults to 1 with `--p`.
    #[arg(long)]
    pub f: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Formula for s < 0, brute force otherwise.
    Auto,
    Formula,
    Bruteforce,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    List,
    Modest,
    Greedy,
    Optimal,
    Matrices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Digits,
    Compose,
    Powersum,
    Mzv,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute S_d(s).
    Powersum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Cap on monic polynomials summed by brute force.
        #[arg(long, default_value_t = 1_000_000)]
        max_evaluations: u128,
    },
    /// Evaluate ζ(s_1, …, s_r).
    Mzv {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated nonzero integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        s: Vec<i64>,
        /// Cap on d_1 when no negative leading index bounds the sum.
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_evaluations: u128,
    },
    /// Enumerate U_d(k) (with --k) or W_d(N) (with --N).
    Compositions {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        k: Option<u64>,
        #[arg(long = "N", id = "n")]
        n: Option<u64>,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = What::List)]
        what: What,
    },
    /// Evaluate every all-negative tuple of one depth over a grid.
    Sweep {
        /// Comma-separated field orders.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long)]
        depth: usize,
        #[arg(long, allow_hyphen_values = true)]
        smin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        smax: i64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Worker threads; output does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the invariant suites against the brute-force oracles.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Use small ranges.
        #[arg(long)]
        quick: bool,
        /// Largest -s for power sums.
        #[arg(long)]
        k_max: Option<u64>,
        /// Smallest index for multizeta sweeps.
        #[arg(long, allow_hyphen_values = true)]
        s_min: Option<i64>,
        /// Largest N for composition and membership scans.
        #[arg(long)]
        n_max: Option<u64>,
        /// Random instances per q for the cover construction.
        #[arg(long)]
        instances: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::EmptySet(_) | Error::DivisionByZero => 1,
        Error::TheoremViolation(_) => 2,
        Error::ResourceLimit(_) | Error::Overflow(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(commands::Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(commands::Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
