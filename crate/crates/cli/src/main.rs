use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use boundstate_cli::commands::{self, OutputFormat};
use boundstate_cli::phase::{self, Window};
use boundstate_cli::verify;
use boundstate_cli::CliError;
use boundstate_core::region::DEFAULT_BOUNDARY_TOL;
use boundstate_core::CouplingPair;
use clap::{Parser, Subcommand, ValueEnum};

/// Bound states of a lattice Schrödinger operator with on-site and
/// nearest-neighbour coupling.
#[derive(Debug, Parser)]
#[command(name = "boundstate", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues below and above the band.
    Eig {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Region of the coupling plane and its eigenvalue counts.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = DEFAULT_BOUNDARY_TOL)]
        boundary_tol: f64,
    },
    /// Region map over a rectangular grid, written as CSV.
    PhaseDiagram {
        #[arg(long, allow_negative_numbers = true)]
        mu_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        mu_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        with_eigenvalues: bool,
    },
    /// Determinant and dispersion integrals sampled on a window off the band.
    DetTrace {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_max: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the determinant roots with the truncated matrix.
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = verify::DEFAULT_SITES)]
        n: usize,
        #[arg(long, default_value_t = verify::DEFAULT_TOL)]
        tol: f64,
    },
}

fn pair(mu: f64, lambda: f64) -> Result<CouplingPair, CliError> {
    Ok(CouplingPair::new(mu, lambda)?)
}

fn print(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    let _ = out.flush();
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eig { mu, lambda, tol, format } => {
            let format = match format {
                Format::Json => OutputFormat::Json,
                Format::Csv => OutputFormat::Csv,
            };
            print(&commands::eig(pair(mu, lambda)?, tol, format)?);
        }
        Command::Classify { mu, lambda, boundary_tol } => {
            print(&commands::classify_report(pair(mu, lambda)?, boundary_tol)?);
        }
        Command::PhaseDiagram { mu_min, mu_max, lambda_min, lambda_max, steps, out, with_eigenvalues } => {
            let window = Window { mu_min, mu_max, lambda_min, lambda_max, steps };
            let cells = phase::compute_grid(&window, with_eigenvalues)?;
            commands::write_file(&out, &phase::render_csv(&cells, with_eigenvalues))?;
        }
        Command::DetTrace { mu, lambda, z_min, z_max, samples, out } => {
            let csv = commands::det_trace(pair(mu, lambda)?, z_min, z_max, samples)?;
            commands::write_file(&out, &csv)?;
        }
        Command::Verify { mu, lambda, n, tol } => {
            let report = verify::run(pair(mu, lambda)?, n, tol)?;
            print(&report.render());
            if !report.passed() {
                return Err(CliError::VerificationFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerificationFailed) {
                eprintln!("error: {e}");
                if matches!(e, CliError::Usage(_)) {
                    eprintln!("run `boundstate --help` for usage");
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
