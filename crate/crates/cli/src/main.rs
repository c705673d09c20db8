use std::io;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use klein_cli::commands::{cmd_export, cmd_heptads, cmd_iso, cmd_sequence, cmd_verify_all, Format};
use klein_cli::selector::Selector;
use klein_cli::verify::{DEFAULT_SEED, RANDOM_ORDERS};
use klein_cli::{CliError, ExitCode};
use klein_grassmannian::PaperFixtures;

/// Build and cross-check the complement of the binary Klein quadric and G_2(8).
#[derive(Parser)]
#[command(name = "klein", version)]
struct Cli {
    /// Suppress non-essential output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute every table and claim and compare against the embedded tables.
    VerifyAll {
        /// Seed for the shuffled heptad removal orders.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a structure or report: off-structure, grassmannian K N, heptads, sequence.
    Export {
        #[arg(required = true, num_args = 1..)]
        what: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism between two structures.
    ///
    /// Each structure is `off-structure`, `grassmannian K N`, `grassmannian:K:N`
    /// or a path to a JSON file.
    Iso {
        #[arg(required = true, num_args = 2..)]
        structures: Vec<String>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the Conwell heptads and their marks.
    Heptads {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Replay the heptad removal sequence.
    Sequence {
        /// Comma-separated permutation of 0..8.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Use a seeded random order instead.
        #[arg(long, conflicts_with = "order")]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let fx = PaperFixtures::embedded();
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::VerifyAll { seed, format, out } => {
            cmd_verify_all(&fx, seed, RANDOM_ORDERS, format, cli.quiet, out.as_deref(), &mut stdout)
                .map(|(code, _)| code)
        }
        Command::Export { what, format, out } => {
            let sel = Selector::parse(&what)?;
            cmd_export(&fx, &sel, format, out.as_deref(), &mut stdout)
        }
        Command::Iso { structures, out } => {
            let (a, used) = Selector::parse_prefix(&structures)?;
            let b = Selector::parse(&structures[used..])?;
            cmd_iso(&a, &b, out.as_deref(), cli.quiet, &mut stdout)
        }
        Command::Heptads { format } => cmd_heptads(&fx, format, &mut stdout),
        Command::Sequence { order, seed, format } => cmd_sequence(order, seed, format, &mut stdout),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() {
                ExitCode::UsageError.code()
            } else {
                0
            };
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code.code());
}
