mod cache;
mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Bounded-scale experiments on finite embeddability and largeness of
/// sets of natural numbers.
#[derive(Parser, Debug)]
#[command(name = "felab", version, about)]
pub struct Cli {
    /// Scan horizon H: sets are enumerated on [1, H].
    #[arg(long, global = true, default_value_t = 100_000)]
    pub horizon: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,

    /// Sieve cache file (overridden by FELAB_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one largeness property of a set.
    Check(commands::CheckArgs),
    /// Check finite embeddability of A into B on a prefix of A.
    Fe(commands::FeArgs),
    /// Check embeddability of all m-element subsets of A into B.
    Me(commands::MeArgs),
    /// Run every property checker and the implication audits.
    Diagram(commands::DiagramArgs),
    /// Print a named construction.
    Construct(commands::ConstructArgs),
    /// Build a strictly decreasing chain with its refutation log.
    Chain(commands::ChainArgs),
    /// Exact audit of the divisor poset on {1..n}.
    Atlas(commands::AtlasArgs),
    /// Parse a set expression and dump its syntax tree.
    Parse(commands::ParseArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors; usage errors are input errors.
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            // A closed reader (e.g. `| head`) is not worth a message.
            let closed = e
                .downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe);
            if !closed {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(commands::error_code(&e))
        }
    }
}
