use std::path::PathBuf;

use clap::{Args, ValueEnum};
use gedspace::{EditConfig, EditScore, MorphismClass, OrderGuard, Padding};

use crate::error::CliError;

pub const GUARD_ENV: &str = "GED_ORDER_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreArg {
    Dot,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PadArg {
    Bound,
    PairwiseSum,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value = "dot")]
    pub score: ScoreArg,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(long, value_enum, default_value = "bound")]
    pub pad: PadArg,
    /// Fixed padded order for `--pad bound`; defaults to the largest input order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Largest padded order accepted; falls back to GED_ORDER_GUARD, then 9.
    #[arg(long)]
    pub guard: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub score: EditScore,
    pub class: MorphismClass,
    pub padding: Padding,
    pub order: Option<usize>,
    pub guard: OrderGuard,
    pub seed: u64,
    pub tol: f64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs, env_guard: Option<&str>) -> Result<Self, CliError> {
        let guard = match (args.guard, env_guard) {
            (Some(g), _) => g,
            (None, Some(text)) => text
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("{GUARD_ENV} must be a positive integer, got {text:?}")))?,
            (None, None) => OrderGuard::default().0,
        };
        let guard = OrderGuard(guard);
        if let Some(n) = args.order {
            guard.check(n)?;
        }
        if !(args.tol > 0.0 && args.tol.is_finite()) {
            return Err(CliError::Config(format!("tolerance must be positive, got {}", args.tol)));
        }
        Ok(RunConfig {
            score: match args.score {
                ScoreArg::Dot => EditScore::Dot,
                ScoreArg::Delta => EditScore::Delta,
            },
            class: match args.class {
                ClassArg::All => MorphismClass::All,
                ClassArg::Compact => MorphismClass::Compact,
            },
            padding: match args.pad {
                PadArg::Bound => Padding::Bound(args.order),
                PadArg::PairwiseSum => Padding::PairwiseSum,
            },
            order: args.order,
            guard,
            seed: args.seed,
            tol: args.tol,
            output: args.output.clone(),
        })
    }

    pub fn edit_config(&self) -> EditConfig {
        EditConfig {
            padding: self.padding,
            guard: self.guard,
        }
    }
}
