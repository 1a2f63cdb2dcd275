//! `maxbv`: exact evaluation, variation analysis, and verification harness
//! for Hardy-Littlewood-type maximal operators on step functions.
//!
//! Exit codes: 0 success, 1 verification or invariant failure, 2 input
//! error. All randomized suites are keyed by `--seed` (or the `MAXBV_SEED`
//! environment variable; the flag wins), and identical configurations
//! produce byte-identical outputs.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser)]
#[command(name = "maxbv", version, about = "Exact maximal-function evaluation and variation analysis on step functions")]
struct Cli {
    /// Seed for randomized suites (overrides MAXBV_SEED)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Scan window LO:HI (rationals)
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Location tolerance (rational or decimal)
    #[arg(long, global = true)]
    tol: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum OperatorArg {
    /// Nontangential family (requires --alpha)
    Cone,
    /// Constant truncation (requires --truncation)
    Truncated,
    /// Diamond region of the square identity (requires --truncation)
    Diamond,
    /// One-sided averages (requires --truncation and --side)
    OneSided,
    /// Variable truncation (requires --lipschitz)
    Lipschitz,
    /// Nontangential with variable truncation (requires --alpha and --lipschitz)
    Mixed,
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum SideArg {
    Left,
    Right,
}

#[derive(Args)]
struct OperatorFlags {
    /// Operator variant
    #[arg(long, value_enum)]
    operator: OperatorArg,
    /// Cone opening (rational)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Truncation radius or one-sided reach (rational)
    #[arg(long, allow_hyphen_values = true)]
    truncation: Option<String>,
    /// Piecewise-linear truncation radius file
    #[arg(long)]
    lipschitz: Option<std::path::PathBuf>,
    /// Side for the one-sided operator
    #[arg(long, value_enum)]
    side: Option<SideArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a maximal operator at a point
    Eval {
        #[command(flatten)]
        operator: OperatorFlags,
        /// Evaluation point (rational)
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Step-function input file
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Total variation and related quantities of the input function
    Variation {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Structural and partition-sum variation of a maximal function
    MaximalVariation {
        #[command(flatten)]
        operator: OperatorFlags,
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Detachment components and their shapes
    Detachment {
        #[command(flatten)]
        operator: OperatorFlags,
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Counterexample constructions
    Counterexample {
        #[command(subcommand)]
        which: CounterexampleCommand,
    },
    /// Variation ratios across a list of cone openings
    Sweep {
        #[arg(long)]
        input: std::path::PathBuf,
        /// Comma-separated cone openings
        #[arg(long, value_delimiter = ',', default_value = "1/3,2/5,1/2,3/4,1,2")]
        alphas: Vec<String>,
    },
    /// Weak-type ratio measurement
    Weaktype {
        #[arg(long)]
        input: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Run the seeded verification suites
    Verify {
        /// Suite name or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        /// Force a failing check (exit-code testing aid)
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
}

#[derive(Subcommand)]
enum CounterexampleCommand {
    /// Spike pair exhibiting a detached local maximum below the critical opening
    ConeSpike {
        /// Cone opening (rational, below 1/3 for the phenomenon)
        #[arg(long, default_value = "1/5")]
        alpha: String,
        /// Spike sharpness
        #[arg(long, default_value_t = 1000)]
        n: i64,
    },
    /// Divergent-variation truncation radius with slope above 1/2
    Lipschitz {
        /// Radius slope (rational, above 1/2)
        #[arg(long, default_value = "3/4")]
        beta: String,
        /// Number of bumps to certify
        #[arg(long, default_value_t = 200)]
        bumps: usize,
    },
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    if let Some(s) = flag {
        return s;
    }
    if let Ok(v) = std::env::var("MAXBV_SEED") {
        if let Ok(s) = v.parse() {
            return s;
        }
    }
    42
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = resolve_seed(cli.seed);
    let format: Format = cli.format.into();
    let ctx = commands::Context {
        seed,
        format,
        out: cli.out.clone(),
        window: cli.window.clone(),
        tol: cli.tol.clone(),
    };
    match commands::run(&ctx, &cli.command) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::VerificationFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
