//! Command-line driver: argv handling and file IO around the library's
//! command dispatch. Exit codes: 0 definite result, 1 error, 2
//! inconclusive outcome (cap reached, bounded-only, none-in-window).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tropdiff::cli::{run_command, Command, SessionConfig, DEFAULT_CAP};

#[derive(Parser)]
#[command(
    name = "tropdiff",
    version,
    about = "Tropical differential algebra over Q(t): initials, reduction, and basis completion"
)]
struct Cli {
    #[command(flatten)]
    session: SessionArgs,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct SessionArgs {
    /// Number of differential indeterminates y1..yn
    #[arg(long = "vars", global = true, default_value_t = 1)]
    vars: usize,
    /// Support profile, e.g. "4N", "1+2N", "{0,2,4}", "{0,1} u 3+5N"
    #[arg(long, global = true)]
    support: Option<String>,
    /// Reduction step cap (TROPDIFF_CAP overrides the default)
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Shift window for the monomial-freeness search
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Round budget for the partial completion path
    #[arg(long, global = true)]
    rounds: Option<u32>,
    /// Basis file: newline-separated polynomials, '#' comments
    #[arg(long, global = true)]
    basis: Option<PathBuf>,
    /// Emit a single JSON document on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Include ancestry traces in basis output
    #[arg(long, global = true)]
    traces: bool,
    /// Monomial ordering (one value available)
    #[arg(long, global = true, default_value = "dorder-deglex")]
    ordering: String,
}

#[derive(Subcommand)]
enum Sub {
    /// Tropical initial of a polynomial
    Initial { poly: String },
    /// Tropical leading monomial, coefficient, and value
    Leading { poly: String },
    /// Differentially reduce a polynomial by the basis
    Reduce { poly: String },
    /// Tropical S-polynomial of two polynomials
    Spoly { f: String, g: String },
    /// Compute a tropical differential Groebner basis
    Trdgb { polys: Vec<String> },
    /// Interreduce a certified basis
    ReduceGb,
    /// Run the bounded pair criterion on a basis
    CheckGb {
        /// Check shifts up to an explicit bound instead of the derived window
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Ideal membership against a certified basis
    Member { poly: String },
    /// Search the initials of the basis for a pure monomial
    SupportCheck,
    /// Differentiation lower bound for a generator set
    Bound { polys: Vec<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.session.ordering != "dorder-deglex" {
        eprintln!(
            "error: unknown ordering '{}'; available: dorder-deglex",
            cli.session.ordering
        );
        return ExitCode::from(1);
    }
    let Some(support) = cli.session.support else {
        eprintln!("error: --support is required");
        return ExitCode::from(1);
    };

    let cap = cli
        .session
        .cap
        .or_else(|| {
            std::env::var("TROPDIFF_CAP")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_CAP);

    let basis = match cli.session.basis {
        None => None,
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read {}: {}", path.display(), e);
                return ExitCode::from(1);
            }
        },
    };

    let cfg = SessionConfig {
        n: cli.session.vars,
        support,
        cap,
        window: cli.session.window,
        rounds: cli.session.rounds,
        basis,
        json: cli.session.json,
        traces: cli.session.traces,
    };

    let command = match cli.command {
        Sub::Initial { poly } => Command::Initial { poly },
        Sub::Leading { poly } => Command::Leading { poly },
        Sub::Reduce { poly } => Command::Reduce { poly },
        Sub::Spoly { f, g } => Command::Spoly { f, g },
        Sub::Trdgb { polys } => Command::TrDgb { polys },
        Sub::ReduceGb => Command::ReduceGb,
        Sub::CheckGb { bound } => Command::CheckGb { bound },
        Sub::Member { poly } => Command::Member { poly },
        Sub::SupportCheck => Command::SupportCheck,
        Sub::Bound { polys } => Command::Bound { polys },
    };

    let out = run_command(&command, &cfg);
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
    } else if out.exit == 1 {
        eprintln!("{}", out.human);
    } else {
        println!("{}", out.human);
    }
    ExitCode::from(out.exit as u8)
}
