use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankin_core::padic::is_prime;
use rankin_core::suites::{run_suite, Suite, SuiteConfig};
use rankin_core::whittaker::DEFAULT_ORDER;

/// Verification engine for the unramified SL2 x GL2 Rankin-Selberg computation.
#[derive(Parser)]
#[command(name = "rankin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Identity,
    Gauss,
    Hilbert,
    Weil,
    Matrix,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Identity => Suite::Identity,
            SuiteArg::Gauss => Suite::Gauss,
            SuiteArg::Hilbert => Suite::Hilbert,
            SuiteArg::Weil => Suite::Weil,
            SuiteArg::Matrix => Suite::Matrix,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Options {
    /// Truncation order of the series checks.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Odd prime to test; repeat for several.
    #[arg(long = "prime", value_parser = parse_prime, default_values_t = [3u64, 5, 7, 11])]
    primes: Vec<u64>,
    /// Largest m for the unit integrals.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    mmax: u32,
    /// Numeric tolerance.
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tolerance)]
    tolerance: f64,
    /// Seed for all random sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if p < 3 || !is_prime(p) {
        return Err(format!("{p} is not an odd prime"));
    }
    Ok(p)
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(t.is_finite() && t > 0.0) {
        return Err(format!("{s} is not a positive tolerance"));
    }
    Ok(t)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify { suite, opts } = cli.command;
    let cfg = SuiteConfig {
        order: opts.order,
        primes: opts.primes,
        mmax: opts.mmax,
        tolerance: opts.tolerance,
        seed: opts.seed,
    };
    let report = match run_suite(suite.into(), &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match opts.report {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
