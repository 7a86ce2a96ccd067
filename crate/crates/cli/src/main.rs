//! ramification-workbench: batch front end for the ramification library.
//!
//! Exit codes: 0 success, 1 input error, 2 a verification check failed,
//! 3 precision exhausted.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ramification::algebra::DEFAULT_SEED;

use commands::CliError;
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "ramification-workbench", version, about = "Exact ramification computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized factorization; results do not depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Polynomial maps of the projective line.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Euler characteristic constraints.
    #[command(subcommand)]
    Chi(ChiCmd),
    /// Finite covers of surfaces.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Totally ramified p-adic extensions.
    #[command(subcommand)]
    Local(LocalCmd),
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    /// Ramification data of t -> f(t).
    Analyze {
        /// Characteristic: a prime, or 0 for the rationals.
        #[arg(long = "char")]
        ch: u64,
        #[arg(long)]
        poly: String,
    },
    /// Fubini constraint of t -> f(t) in Z[u].
    Fubini {
        #[arg(long = "char")]
        ch: u64,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Subcommand, Debug)]
enum ChiCmd {
    /// Certificate that p - 1 lies in the ideal of Fubini constraints.
    Certificate {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    /// Euler characteristic of the cover from branch data.
    Iversen {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum LocalCmd {
    /// Ramification filtration and cluster checks of Q_p[x]/(g).
    Analyze {
        #[arg(long)]
        p: u64,
        /// Eisenstein polynomial in x (or t).
        #[arg(long)]
        eisenstein: String,
        /// Working precision in p-adic digits.
        #[arg(long)]
        precision: Option<u32>,
        /// Window end for the ball-count formula, e.g. 3 or 7/2.
        #[arg(long)]
        window: Option<String>,
    },
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.group {
        Group::Curve(CurveCmd::Analyze { ch, poly }) => commands::curve_analyze(*ch, poly, seed),
        Group::Curve(CurveCmd::Fubini { ch, poly }) => commands::curve_fubini(*ch, poly, seed),
        Group::Chi(ChiCmd::Certificate { p }) => commands::chi_certificate(*p),
        Group::Surface(SurfaceCmd::Iversen { input }) => commands::surface_iversen(input),
        Group::Local(LocalCmd::Analyze {
            p,
            eisenstein,
            precision,
            window,
        }) => commands::local_analyze(*p, eisenstein, *precision, window.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(n, _)| n.as_str())
                    .collect();
                eprintln!("error: check failed: {}", failed.join(", "));
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
