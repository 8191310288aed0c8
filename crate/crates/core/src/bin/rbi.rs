use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reverse_bernstein::commands::{
    cmd_constants, cmd_extremal, cmd_interpolate, cmd_sweep, cmd_verify, error_exit_code, CommandOutput, Format,
    SweepOptions, VerifyOptions, EXIT_USAGE,
};
use reverse_bernstein::verify::DEFAULT_TOLERANCE;

/// Sharp constants, extremal functions and verification for the reverse
/// Bernstein inequality ‖f^(m)‖∞ ≥ C(k,m)·‖f‖∞ on functions with no
/// frequencies below k.
#[derive(Parser)]
#[command(name = "rbi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Table of B_m, Euler numbers, C(k,m) and D(k,m) for k in [k, k-max], m in [m, m-max].
    Constants {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Defaults to --k.
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Defaults to --m.
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// The extremal function I^m c_k' (CSV: samples x,f,fm over one period).
    Extremal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Interpolant of J_m at the square-wave zeros, zero structure and L1 residual.
    Interpolate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Randomized reverse (or, with --forward, forward) Bernstein trials.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest frequency of the random samples (at most 1024).
        #[arg(long, default_value_t = 64)]
        band: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative pass tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Check ‖p'‖∞ ≤ k‖p‖∞ on random polynomials of degree k instead; --m and --band are ignored.
        #[arg(long)]
        forward: bool,
    },
    /// Verify every (k, m) up to the maxima plus the extremal saturation
    /// (CSV columns k,m,min_margin,saturation_gap,failures).
    Sweep {
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        m_max: usize,
        /// Trials per cell; 0 runs only the saturation test.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        band: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

fn run(cli: &Cli) -> reverse_bernstein::Result<CommandOutput> {
    match cli.command {
        Command::Constants { k, k_max, m, m_max } => cmd_constants(k..=k_max.unwrap_or(k), m..=m_max.unwrap_or(m)),
        Command::Extremal { k, m } => cmd_extremal(k, m),
        Command::Interpolate { k, m } => cmd_interpolate(k, m),
        Command::Verify { k, m, trials, band, seed, tol, forward } => {
            cmd_verify(VerifyOptions { k, m, trials, band, seed, tol, forward })
        }
        Command::Sweep { k_max, m_max, trials, band, seed, tol } => {
            cmd_sweep(SweepOptions { k_max, m_max, trials, band, seed, tol })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_exit_code(&e) as u8);
        }
    };
    let text = output.render(format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(output.exit_code() as u8)
}
