//! `symsq`: ring tables, invariants, hyperelliptic counts, the comparison
//! with the Hilbert scheme, the self-test and table export.
//!
//! Exit status: 0 success, 1 computation error or failed check, 2 usage error.

pub mod acceptance;
pub mod cache;
mod commands;
pub mod envelope;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use envelope::Envelope;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "symsq", version, about = "Genus-zero invariants of [Sym^2 P^2], hyperelliptic counts, and the comparison with Hilb^2 P^2")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Print the result envelope as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timing (off by default so output is reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Invariant cache file.
    #[arg(long, global = true, env = cache::ENV_VAR, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbifold ring tables.
    Ring {
        #[arg(long, value_enum, default_value_t = Show::Products)]
        show: Show,
    },
    /// One invariant from a comma-separated list of class expressions, e.g. "a^4, a^2".
    Invariant {
        #[arg(long, short)]
        degree: u32,
        expression: String,
    },
    /// Hyperelliptic counts E(d, g) for g up to the maximum genus.
    Hyperelliptic {
        #[arg(long, short)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        max_genus: u32,
    },
    /// Comparison with the Hilbert scheme.
    Crc {
        #[command(subcommand)]
        action: CrcAction,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Skip the degree-two extension.
        #[arg(long)]
        quick: bool,
        /// Print every individual check.
        #[arg(long)]
        details: bool,
    },
    /// Writes reconstructed invariants to a JSON file.
    Export {
        #[arg(long, value_enum)]
        what: ExportWhat,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_degree: u32,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CrcAction {
    Verify {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=30))]
        max_genus: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Show {
    Products,
    Pairing,
    Relations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Invariants,
}

/// Parses `args` (program name first), runs, prints, and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
