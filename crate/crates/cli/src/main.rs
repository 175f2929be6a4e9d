//! `ged`: graph edit distances, kernels, Gram matrices, alignments, sample
//! means and invariant suites on attributed graph files.

mod commands;
mod config;
mod error;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gedspace::kernel::GramKind;

use config::{CommonArgs, RunConfig, GUARD_ENV};
use error::CliError;

#[derive(Parser)]
#[command(name = "ged", version, about = "Graph edit kernels and orbit-space geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Kernel,
    Distance,
}

#[derive(Subcommand)]
enum Command {
    /// Induced edit distance between two graphs.
    Dist {
        a: PathBuf,
        b: PathBuf,
        /// Also print the permutation applied to the second graph.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Graph edit kernel of two graphs.
    Kernel {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Pairwise matrix over every `.json` graph in a directory, as CSV.
    Gram {
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "distance")]
        kind: KindArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Representations of each graph nearest to an ordinary center.
    Align {
        #[arg(long)]
        center: PathBuf,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Frechet sample mean of the given graphs.
    Mean {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a named invariant suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Dist { common, .. }
            | Command::Kernel { common, .. }
            | Command::Gram { common, .. }
            | Command::Align { common, .. }
            | Command::Mean { common, .. }
            | Command::Check { common, .. } => common,
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), CliError> {
    let env_guard = std::env::var(GUARD_ENV).ok();
    let cfg = RunConfig::from_args(cli.command.common(), env_guard.as_deref())?;
    match &cli.command {
        Command::Dist { a, b, witness, .. } => commands::dist(&cfg, a, b, *witness, out),
        Command::Kernel { a, b, witness, .. } => commands::kernel(&cfg, a, b, *witness, out),
        Command::Gram { dir, kind, .. } => {
            let kind = match kind {
                KindArg::Kernel => GramKind::Kernel,
                KindArg::Distance => GramKind::Distance,
            };
            commands::gram(&cfg, dir, kind, out)
        }
        Command::Align { center, files, .. } => commands::align(&cfg, center, files, out),
        Command::Mean {
            files,
            max_iter,
            restarts,
            ..
        } => commands::mean(&cfg, files, *max_iter, *restarts, out, log),
        Command::Check { suite, trials, .. } => commands::check(&cfg, suite, *trials, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut log = stderr.lock();
    match run(cli, &mut out, &mut log) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            let _ = writeln!(log, "ged: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
