mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Constructions with n-fold origami: fold axioms, polynomial roots,
/// angle sections and regular polygons.
#[derive(Debug, Parser)]
#[command(name = "nfold", version)]
pub struct Cli {
    /// Incidence tolerance used when verifying traces.
    #[arg(long, global = true, value_name = "E")]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report how many simultaneous folds an m-gon or m-section needs.
    Check {
        m: u64,
        /// Fold budget to test against.
        #[arg(long, value_name = "N")]
        folds: Option<u64>,
    },
    /// Divide an angle into equal parts.
    Msect {
        #[arg(long, value_name = "D", allow_negative_numbers = true)]
        angle_deg: f64,
        #[arg(long, value_name = "M")]
        parts: u64,
        #[command(flatten)]
        out: Artifacts,
    },
    /// Construct the vertices of a regular m-gon on the unit circle.
    Polygon {
        m: u64,
        /// Fold budget; the command exits with status 2 if it is too small.
        #[arg(long, value_name = "N")]
        folds: Option<u64>,
        #[command(flatten)]
        out: Artifacts,
    },
    /// Real roots of a polynomial by Lill's method.
    Solve {
        /// Coefficients from the leading term down, comma separated.
        #[arg(
            long,
            value_name = "LIST",
            value_delimiter = ',',
            allow_negative_numbers = true
        )]
        coeffs: Vec<f64>,
        /// Which root (in ascending order) the emitted trace constructs.
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[command(flatten)]
        out: Artifacts,
    },
    /// Solve one single-fold operation from a JSON file of givens.
    Axiom {
        /// Operation number, 1 to 8.
        id: u8,
        /// Givens: {"points": [[x, y], ...], "lines": [[a, b, c], ...]}.
        #[arg(long, value_name = "FILE")]
        json: PathBuf,
        /// Where to write the trace document.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Artifacts {
    /// Write the report and trace as JSON.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write the trace as an SVG diagram.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
