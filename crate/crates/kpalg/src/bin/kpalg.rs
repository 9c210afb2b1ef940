//! Thin command-line front end over the library: parse a config file, run
//! one pipeline, print the report, map failures to exit codes.
//!
//! Exit codes: 0 success, 1 usage/i-o, 2 config or expression parse error,
//! 3 semantic error, 4 verification failure, 5 resource limit exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use kpalg::config::load_config;
use kpalg::report::{run, CommandKind};
use kpalg::{Budget, Category, Error};

#[derive(Parser)]
#[command(name = "kpalg", version, about = "Exact Kähler–Poisson algebra engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Algebra description file (text or JSON).
    #[arg(long)]
    config: PathBuf,
    /// Emit the machine-readable JSON block instead of text.
    #[arg(long)]
    json: bool,
    /// Suppress the timestamped header line (for byte-stable output).
    #[arg(long)]
    no_header: bool,
    /// Gröbner pair budget for ideal computations.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the Poisson structure: Jacobi + centrality of relations.
    Jacobi(Common),
    /// Check the defining relation eta P g P g P = -P.
    #[command(name = "kp-check")]
    KpCheck(Common),
    /// Congruence block-diagonalization of the bracket matrix.
    Blockdiag(Common),
    /// Construct (V, lambda, g, eta) and verify in the localization.
    Construct(Common),
    /// Christoffel symbols of the Levi-Civita connection.
    Christoffel(Common),
    /// Lowered curvature tensor components.
    Curvature(Common),
    /// Ricci curvature on the generating derivations.
    Ricci(Common),
    /// Scalar curvature.
    Scalar(Common),
    /// Laplacian of an element.
    Laplacian {
        /// Element to apply the Laplacian to, in canonical syntax.
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every verification family; exit 0 only if all pass.
    #[command(name = "verify-all")]
    VerifyAll(Common),
}

impl Command {
    fn split(self) -> (CommandKind, Common) {
        match self {
            Command::Jacobi(c) => (CommandKind::Jacobi, c),
            Command::KpCheck(c) => (CommandKind::KpCheck, c),
            Command::Blockdiag(c) => (CommandKind::BlockDiag, c),
            Command::Construct(c) => (CommandKind::Construct, c),
            Command::Christoffel(c) => (CommandKind::Christoffel, c),
            Command::Curvature(c) => (CommandKind::Curvature, c),
            Command::Ricci(c) => (CommandKind::Ricci, c),
            Command::Scalar(c) => (CommandKind::Scalar, c),
            Command::Laplacian { expr, common } => (CommandKind::Laplacian(expr), common),
            Command::VerifyAll(c) => (CommandKind::VerifyAll, c),
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 1,
        _ => match err.category() {
            Category::Parse => 2,
            Category::Semantic => 3,
            Category::Verification => 4,
            Category::Resource => 5,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, common) = cli.command.split();

    let mut budget = Budget::default();
    if let Some(pairs) = common.budget {
        budget.groebner_pairs = pairs;
    }

    let cfg = match load_config(&common.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("kpalg: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };

    match run(&kind, &cfg, &budget) {
        Ok(report) => {
            if common.json {
                print!("{}", report.render_json());
            } else {
                if !common.no_header {
                    let secs = SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0);
                    println!(
                        "# kpalg {} {} (unix {})",
                        kind.name(),
                        common.config.display(),
                        secs
                    );
                }
                print!("{}", report.render_text());
            }
            if report.failed {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("kpalg: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
