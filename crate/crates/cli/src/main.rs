//! `latticeft` — indicator-function Fourier transforms of convex bodies,
//! lattice tiling verification, and the 4D counterexample pipeline.

mod commands;
mod parse;
mod reproduce;

use clap::{Args, Parser, Subcommand};
use latticeft::bodies::Body;
use latticeft::DEFAULT_SEED;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes: 0 success, 1 check/step failure, 2 input error,
/// 3 inconclusive sampling.
#[derive(Debug)]
pub enum CliError {
    Failure(String),
    Input(String),
    Inconclusive(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Input(_) => 2,
            CliError::Inconclusive(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Failure(m) | CliError::Input(m) | CliError::Inconclusive(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "latticeft",
    version,
    about = "Fourier transforms of convex-body indicators, lattice tiling checks, and a 4D equal-spectrum counterexample pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Print the JSON report to stdout instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline: agreement on Z^2 and Z^4, off-lattice
    /// separation, non-congruence, and tiling checks.
    Reproduce {
        /// Planar body A (default: the canonical rhombus).
        #[arg(long, default_value = "R")]
        body_a: String,

        /// Planar body B (default: the canonical hexagon).
        #[arg(long, default_value = "H")]
        body_b: String,

        /// Half-width of the planar sweep box.
        #[arg(long, default_value_t = 50)]
        range2: i64,

        /// Half-width of the 4D sweep box.
        #[arg(long, default_value_t = 10)]
        range4: i64,

        /// Agreement tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,

        /// Cover-count samples per tiling check.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,

        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// Boundary margin for tiling samples.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,

        /// Report path.
        #[arg(long, default_value = "reproduce_report.json")]
        out: PathBuf,

        /// Also write per-point CSVs next to the report.
        #[arg(long)]
        emit_points: bool,

        /// Print the JSON report to stdout instead of the text summary.
        #[arg(long)]
        json: bool,
    },

    /// Evaluate the transform of a body at one rational frequency.
    Ft {
        /// Body spec: R, H, ball:m:r, square:s, products like R*ball:2:1,
        /// or a polygon JSON file.
        #[arg(long)]
        body: String,

        /// Comma-separated rational coordinates, e.g. --xi 1/2,0.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,

        /// Cross-check against the quadrature oracle.
        #[arg(long)]
        oracle: bool,

        /// Oracle base order.
        #[arg(long, default_value_t = 24)]
        order: usize,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Run both tiling verifiers for a polygon against a lattice.
    TileCheck {
        #[arg(long)]
        body: String,

        /// Lattice: Z2 or g1x,g1y,g2x,g2y with rational entries.
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,

        /// Expected covering multiplicity.
        #[arg(long, default_value_t = 1)]
        k: u32,

        /// Dual-point range for the spectral check.
        #[arg(long, default_value_t = 30)]
        range: i64,

        #[arg(long, default_value_t = 1e-10)]
        tol: f64,

        #[arg(long, default_value_t = 10_000)]
        samples: u64,

        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        #[arg(long, default_value_t = 1e-9)]
        eps: f64,

        /// Random dual-lattice pairs for the orthogonality check.
        #[arg(long, default_value_t = 100)]
        pairs: u64,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Compare closed form, quadrature oracle, and optionally Monte Carlo.
    Oracle {
        #[arg(long)]
        body: String,

        /// Comma-separated rational coordinates, e.g. --xi 1/2,0,0,0.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,

        /// Quadrature base order.
        #[arg(long, default_value_t = 24)]
        order: usize,

        /// Also run the Monte Carlo estimator.
        #[arg(long)]
        mc: bool,

        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,

        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        #[command(flatten)]
        output: OutputArgs,
    },

    /// Show that transform agreement at 0 pins an interval's length.
    IntervalDemo {
        /// First half-length (rational).
        h1: String,

        /// Second half-length (rational).
        h2: String,

        #[command(flatten)]
        output: OutputArgs,
    },
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input("tolerance must be positive".into()))
    }
}

fn check_range(range: i64) -> Result<(), CliError> {
    if range >= 1 {
        Ok(())
    } else {
        Err(CliError::Input("range must be >= 1".into()))
    }
}

fn expect_matching_dim(body: &Body, xi: &latticeft::transform::Frequency) -> Result<(), CliError> {
    if body.dim() == xi.dim() {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "body has dimension {}, frequency has {}",
            body.dim(),
            xi.dim()
        )))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Reproduce {
            body_a,
            body_b,
            range2,
            range4,
            tol,
            samples,
            seed,
            eps,
            out,
            emit_points,
            json,
        } => {
            check_tol(tol)?;
            check_range(range2)?;
            check_range(range4)?;
            let default_bodies = body_a == "R" && body_b == "H";
            let as_polygon = |spec: &str| -> Result<latticeft::bodies::Polygon2, CliError> {
                match parse::parse_body(spec)? {
                    Body::Polygon(p) => Ok(p),
                    other => Err(CliError::Input(format!(
                        "reproduce needs planar polygon bodies, got a {}-dimensional body",
                        other.dim()
                    ))),
                }
            };
            reproduce::run(reproduce::ReproduceConfig {
                body_a: as_polygon(&body_a)?,
                body_b: as_polygon(&body_b)?,
                default_bodies,
                range2,
                range4,
                tol,
                samples,
                seed,
                eps,
                out,
                emit_points,
                json_stdout: json,
            })
        }
        Command::Ft {
            body,
            xi,
            oracle,
            order,
            output,
        } => {
            let body = parse::parse_body(&body)?;
            let xi = parse::parse_frequency(&xi)?;
            expect_matching_dim(&body, &xi)?;
            commands::cmd_ft(commands::FtArgs {
                body,
                xi,
                with_oracle: oracle,
                order,
                json: output.json,
                out: output.out,
            })
        }
        Command::TileCheck {
            body,
            lattice,
            k,
            range,
            tol,
            samples,
            seed,
            eps,
            pairs,
            output,
        } => {
            check_tol(tol)?;
            check_range(range)?;
            if samples == 0 || pairs == 0 {
                return Err(CliError::Input("samples and pairs must be >= 1".into()));
            }
            commands::cmd_tile_check(commands::TileCheckArgs {
                body: parse::parse_body(&body)?,
                lattice: parse::parse_lattice(&lattice)?,
                expected_k: k,
                range,
                tol,
                samples,
                seed,
                eps,
                orthogonality_pairs: pairs,
                json: output.json,
                out: output.out,
            })
        }
        Command::Oracle {
            body,
            xi,
            order,
            mc,
            samples,
            seed,
            output,
        } => {
            let body = parse::parse_body(&body)?;
            let xi = parse::parse_frequency(&xi)?;
            expect_matching_dim(&body, &xi)?;
            if samples == 0 {
                return Err(CliError::Input("samples must be >= 1".into()));
            }
            commands::cmd_oracle(commands::OracleArgs {
                body,
                xi,
                order,
                with_mc: mc,
                samples,
                seed,
                json: output.json,
                out: output.out,
            })
        }
        Command::IntervalDemo { h1, h2, output } => {
            commands::cmd_interval_demo(&h1, &h2, output.json, output.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
