//! `hypercong`: run single congruence checks, the sampled identity families,
//! or a full batch scan from the command line.
//!
//! Exit status: 0 when every executed check passed or was not applicable,
//! 1 when at least one check failed, 2 on a usage or configuration error.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hypercong::scan::{summarize, ScanConfig};
use hypercong::{
    congruences, emit_report, run_identity_families, run_scan_to, sieve_primes, CheckKind,
    CheckReport, Rational, ReportFormat, ScanSummary,
};

#[derive(Parser)]
#[command(
    name = "hypercong",
    about = "Exact verification of truncated hypergeometric congruences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the 3F2 vanishing congruence for one (alpha, beta, p)
    Theorem {
        /// Odd prime modulus base
        #[arg(long)]
        p: u64,
        /// First upper parameter, as a/b
        #[arg(long, allow_hyphen_values = true)]
        alpha: Rational,
        /// Second upper parameter, as a/b
        #[arg(long, allow_hyphen_values = true)]
        beta: Rational,
        /// Modulus exponent (the congruence is claimed at 2)
        #[arg(long, default_value_t = 2)]
        mod_exp: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the sampled exact-identity families
    Identities {
        /// Seed for the deterministic sample streams
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per identity family
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check Mortenson's four 2F1 congruences over a prime range
    Mortenson {
        #[arg(long, default_value_t = 5)]
        prime_min: u64,
        #[arg(long, default_value_t = 199)]
        prime_max: u64,
        #[arg(long, default_value_t = 2)]
        mod_exp: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check Sun's 2F1 congruence for one (alpha, p)
    Sun {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, default_value_t = 2)]
        mod_exp: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Batch-verify checks over a prime range and parameter grid
    Scan {
        #[arg(long, default_value_t = 3)]
        prime_min: u64,
        #[arg(long, default_value_t = 97)]
        prime_max: u64,
        /// Largest denominator in the alpha = a/d grid
        #[arg(long, default_value_t = 6)]
        denom_max: u64,
        /// Numerators are scanned in [-numer-bound, numer-bound]
        #[arg(long, default_value_t = 50)]
        numer_bound: i64,
        #[arg(long, default_value_t = 2)]
        mod_exp: u32,
        /// Comma-separated subset of: theorem,alt,mortenson,sun,identities
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "theorem,alt,mortenson,sun,identities"
        )]
        checks: Vec<CheckKind>,
        #[arg(long, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Worker threads
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Seed for the sampled identity checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => match summary.exit_code() {
            0 => ExitCode::SUCCESS,
            _ => ExitCode::from(1),
        },
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ScanSummary, String> {
    match cli.command {
        Command::Theorem {
            p,
            alpha,
            beta,
            mod_exp,
            output,
        } => {
            let report = congruences::verify_main_theorem_exp(&alpha, &beta, p, mod_exp)
                .map_err(|e| e.to_string())?;
            finish(vec![report], &output)
        }
        Command::Identities {
            seed,
            samples,
            output,
        } => finish(run_identity_families(seed, samples), &output),
        Command::Mortenson {
            prime_min,
            prime_max,
            mod_exp,
            output,
        } => {
            if prime_min < 5 {
                return Err(format!(
                    "mortenson needs primes >= 5, got --prime-min {prime_min}"
                ));
            }
            let primes = sieve_primes(prime_min, prime_max).map_err(|e| e.to_string())?;
            let mut reports = Vec::new();
            for p in primes {
                reports.extend(
                    congruences::verify_mortenson_exp(p, mod_exp).map_err(|e| e.to_string())?,
                );
            }
            finish(reports, &output)
        }
        Command::Sun {
            p,
            alpha,
            mod_exp,
            output,
        } => {
            let report =
                congruences::verify_sun_exp(&alpha, p, mod_exp).map_err(|e| e.to_string())?;
            finish(vec![report], &output)
        }
        Command::Scan {
            prime_min,
            prime_max,
            denom_max,
            numer_bound,
            mod_exp,
            checks,
            format,
            jobs,
            seed,
            out,
        } => {
            let cfg = ScanConfig {
                prime_min,
                prime_max,
                denom_max,
                numer_bound,
                mod_exponent: mod_exp,
                checks: checks.into_iter().collect::<BTreeSet<_>>(),
                format,
                jobs,
                seed,
            };
            let mut sink = open_sink(&out)?;
            let summary = run_scan_to(&cfg, &mut sink).map_err(|e| e.to_string())?;
            sink.flush().map_err(|e| e.to_string())?;
            Ok(summary)
        }
    }
}

fn open_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, String> {
    match path {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn finish(reports: Vec<CheckReport>, output: &OutputArgs) -> Result<ScanSummary, String> {
    let summary = summarize(&reports);
    let mut sink = open_sink(&output.out)?;
    emit_report(&reports, &summary, output.format, &mut sink).map_err(|e| e.to_string())?;
    sink.flush().map_err(|e| e.to_string())?;
    Ok(summary)
}
