//! Batch verification: prime sieving, parameter enumeration, parallel check
//! execution, and deterministic report emission.
//!
//! A work unit is one (check family, prime) group (prime-free identity
//! families form their own units). Units run in parallel; their rows are
//! sorted within the unit by the inputs key, and units are emitted in
//! (check name, prime) order, so the report stream is globally sorted and
//! byte-identical regardless of the parallelism degree. Sampled identity
//! families draw from per-family SplitMix64 streams derived from the config
//! seed, so a seed pins every sampled instance.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruences::{
    binomial_square_identity, closed_sum_identity, double_sum_swap, kernel_congruence,
    reflection_identity, split_recurrence, term_split_identity, verify_alt_form_exp,
    verify_main_theorem_exp, verify_mortenson_exp, verify_shift_congruence,
    verify_shift_invariance, verify_sun_exp, wraparound_reduction,
};
use crate::error::{Error, Result};
use crate::hypergeom::verify_saalschutz;
use crate::rational::Rational;
use crate::report::CheckReport;
use crate::sampling::{
    salts, sample_closed_sum_alpha, sample_ordered_pair, sample_saalschutz, sample_term_split,
    sample_wrap_pair, SplitMix64,
};

/// Sample counts for the identity families inside `scan`. The standalone
/// identity runner takes its count from the caller instead.
const GLOBAL_SAMPLES: u64 = 60;
const CHAIN_SAMPLES: u64 = 24;

/// Which checks a scan runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Theorem,
    Alt,
    Mortenson,
    Sun,
    Identities,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Theorem,
        CheckKind::Alt,
        CheckKind::Mortenson,
        CheckKind::Sun,
        CheckKind::Identities,
    ];
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckKind::Theorem => "theorem",
            CheckKind::Alt => "alt",
            CheckKind::Mortenson => "mortenson",
            CheckKind::Sun => "sun",
            CheckKind::Identities => "identities",
        };
        f.write_str(name)
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(CheckKind::Theorem),
            "alt" => Ok(CheckKind::Alt),
            "mortenson" => Ok(CheckKind::Mortenson),
            "sun" => Ok(CheckKind::Sun),
            "identities" => Ok(CheckKind::Identities),
            other => Err(Error::InvalidConfig(format!("unknown check {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidConfig(format!("unknown format {other:?}"))),
        }
    }
}

/// Scan configuration.
///
/// The parameter grid is alpha = a/d with `1 <= d <= denom_max`,
/// `|a| <= numer_bound`, gcd(a, d) = 1, filtered per prime to p-integral
/// values. The default covers primes 3..97 with denominators up to 6 and
/// numerators up to 50.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub prime_min: u64,
    pub prime_max: u64,
    pub denom_max: u64,
    pub numer_bound: i64,
    pub mod_exponent: u32,
    pub checks: BTreeSet<CheckKind>,
    pub format: ReportFormat,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            prime_min: 3,
            prime_max: 97,
            denom_max: 6,
            numer_bound: 50,
            mod_exponent: 2,
            checks: CheckKind::ALL.into_iter().collect(),
            format: ReportFormat::Json,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prime_min < 3 || self.prime_min > self.prime_max {
            return Err(Error::InvalidConfig(format!(
                "prime range [{}, {}] must satisfy 3 <= min <= max",
                self.prime_min, self.prime_max
            )));
        }
        if self.denom_max < 1 {
            return Err(Error::InvalidConfig("denom_max must be >= 1".into()));
        }
        if self.numer_bound < 1 {
            return Err(Error::InvalidConfig("numer_bound must be >= 1".into()));
        }
        if self.mod_exponent < 1 {
            return Err(Error::InvalidConfig("mod_exponent must be >= 1".into()));
        }
        if self.jobs < 1 {
            return Err(Error::InvalidConfig("jobs must be >= 1".into()));
        }
        Ok(())
    }
}

/// Aggregated scan outcome. `total_checks` always equals
/// `passes + failures + not_applicable`, and every failing report is kept
/// for replay.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub total_checks: u64,
    pub passes: u64,
    pub failures: u64,
    pub not_applicable: u64,
    pub failures_detail: Vec<CheckReport>,
}

impl ScanSummary {
    fn absorb(&mut self, report: &CheckReport) {
        self.total_checks += 1;
        match report.pass {
            Some(true) => self.passes += 1,
            Some(false) => {
                self.failures += 1;
                self.failures_detail.push(report.clone());
            }
            None => self.not_applicable += 1,
        }
    }

    /// Process exit status contract: 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures > 0 {
            1
        } else {
            0
        }
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("summary serialization cannot fail")
    }
}

/// All primes in `[lo, hi]`, ascending, by sieve of Eratosthenes.
pub fn sieve_primes(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidPrimeRange { lo, hi });
    }
    if hi > 100_000_000 {
        return Err(Error::InvalidConfig(format!(
            "prime bound {hi} exceeds the supported sieve range"
        )));
    }
    let size = (hi + 1) as usize;
    let mut composite = vec![false; size];
    let mut primes = Vec::new();
    for n in 2..=hi {
        if !composite[n as usize] {
            if n >= lo {
                primes.push(n);
            }
            let mut multiple = n * n;
            while multiple <= hi {
                composite[multiple as usize] = true;
                multiple += n;
            }
        }
    }
    Ok(primes)
}

/// The canonical p-integral rationals a/d with `1 <= d <= denom_max`,
/// `|a| <= numer_bound`, gcd(a, d) = 1, ordered by denominator then
/// numerator.
pub fn enumerate_rationals(p: u64, denom_max: u64, numer_bound: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in 1..=denom_max {
        if d % p == 0 {
            continue;
        }
        for a in -numer_bound..=numer_bound {
            if gcd_u64(a.unsigned_abs(), d) == 1 {
                out.push(Rational::new(a.into(), (d as i64).into()).expect("positive denominator"));
            }
        }
    }
    out
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Every ordered pair over [`enumerate_rationals`]; the alpha/beta grid for
/// one prime. Pairs violating a check's hypothesis are still enumerated and
/// come back from the verifier as not-applicable.
pub fn enumerate_params(p: u64, cfg: &ScanConfig) -> Vec<(Rational, Rational)> {
    let list = enumerate_rationals(p, cfg.denom_max, cfg.numer_bound);
    let mut pairs = Vec::with_capacity(list.len() * list.len());
    for alpha in &list {
        for beta in &list {
            pairs.push((alpha.clone(), beta.clone()));
        }
    }
    pairs
}

/// One (check family, prime) work unit.
#[derive(Clone, Debug)]
struct Unit {
    name: &'static str,
    prime: Option<u64>,
}

fn build_units(cfg: &ScanConfig, primes: &[u64]) -> Vec<Unit> {
    let mut units = Vec::new();
    let per_prime = |name: &'static str, units: &mut Vec<Unit>| {
        for &p in primes {
            units.push(Unit {
                name,
                prime: Some(p),
            });
        }
    };
    for kind in &cfg.checks {
        match kind {
            CheckKind::Theorem => per_prime("theorem", &mut units),
            CheckKind::Alt => per_prime("alt_form", &mut units),
            CheckKind::Sun => per_prime("sun", &mut units),
            CheckKind::Mortenson => {
                for &p in primes.iter().filter(|&&p| p >= 5) {
                    units.push(Unit {
                        name: "mortenson",
                        prime: Some(p),
                    });
                }
            }
            CheckKind::Identities => {
                for name in [
                    "binomial_square",
                    "closed_sum",
                    "double_sum_swap",
                    "reflection",
                    "saalschutz",
                    "split_recurrence",
                    "term_split",
                ] {
                    units.push(Unit { name, prime: None });
                }
                per_prime("shift_congruence", &mut units);
                per_prime("shift_invariance", &mut units);
                per_prime("wraparound", &mut units);
                per_prime("kernel", &mut units);
            }
        }
    }
    units.sort_by_key(|u| (u.name, u.prime.unwrap_or(0)));
    units
}

fn run_unit(unit: &Unit, cfg: &ScanConfig) -> Vec<CheckReport> {
    let seed = cfg.seed;
    let e = cfg.mod_exponent;
    let mut reports: Vec<CheckReport> = match (unit.name, unit.prime) {
        ("theorem", Some(p)) => {
            let list = enumerate_rationals(p, cfg.denom_max, cfg.numer_bound);
            let mut out = Vec::with_capacity(list.len() * list.len());
            for alpha in &list {
                for beta in &list {
                    out.push(
                        verify_main_theorem_exp(alpha, beta, p, e)
                            .expect("sieved prime and validated exponent"),
                    );
                }
            }
            out
        }
        ("alt_form", Some(p)) => {
            let list = enumerate_rationals(p, cfg.denom_max, cfg.numer_bound);
            let mut out = Vec::with_capacity(list.len() * list.len());
            for a in &list {
                for b in &list {
                    out.push(
                        verify_alt_form_exp(a, b, p, e)
                            .expect("sieved prime and validated exponent"),
                    );
                }
            }
            out
        }
        ("sun", Some(p)) => enumerate_rationals(p, cfg.denom_max, cfg.numer_bound)
            .iter()
            .map(|alpha| verify_sun_exp(alpha, p, e).expect("sieved prime"))
            .collect(),
        ("mortenson", Some(p)) => {
            verify_mortenson_exp(p, e).expect("primes below 5 are filtered out")
        }
        ("shift_congruence", Some(p)) => {
            let mut rng = SplitMix64::stream_at_prime(seed, salts::SHIFT_CONGRUENCE, p);
            (0..CHAIN_SAMPLES)
                .map(|_| {
                    let alpha = rng.next_in(0, p - 1);
                    let k = rng.next_in(0, p - 1);
                    let s = rng.next_signed(-3, 3);
                    verify_shift_congruence(alpha, k, s, p).expect("sieved prime")
                })
                .collect()
        }
        ("shift_invariance", Some(p)) => {
            let mut rng = SplitMix64::stream_at_prime(seed, salts::SHIFT_INVARIANCE, p);
            (0..CHAIN_SAMPLES)
                .map(|_| {
                    let (alpha, beta) = sample_wrap_pair(&mut rng, p);
                    let s = rng.next_signed(-3, 3);
                    verify_shift_invariance(alpha, beta, s, p).expect("sieved prime")
                })
                .collect()
        }
        ("wraparound", Some(p)) => {
            let mut rng = SplitMix64::stream_at_prime(seed, salts::WRAPAROUND, p);
            (0..CHAIN_SAMPLES)
                .map(|_| {
                    let (a, b) = sample_wrap_pair(&mut rng, p);
                    wraparound_reduction(a, b, p).expect("sieved prime")
                })
                .collect()
        }
        ("kernel", Some(p)) => {
            let mut rng = SplitMix64::stream_at_prime(seed, salts::KERNEL, p);
            (0..CHAIN_SAMPLES)
                .map(|_| {
                    let (a, b) = sample_wrap_pair(&mut rng, p);
                    kernel_congruence(a, b, p).expect("sieved prime")
                })
                .collect()
        }
        (name, None) => global_family(name, seed, GLOBAL_SAMPLES),
        (name, prime) => unreachable!("unit ({name}, {prime:?})"),
    };
    reports.sort_by_cached_key(CheckReport::inputs_key);
    // sampled families can repeat an instance; keep each row once
    reports.dedup();
    reports
}

/// One prime-free identity family, `samples` seeded draws.
fn global_family(name: &str, seed: u64, samples: u64) -> Vec<CheckReport> {
    match name {
        "binomial_square" => {
            let mut rng = SplitMix64::stream(seed, salts::BINOMIAL_SQUARE);
            (0..samples)
                .map(|_| binomial_square_identity(rng.next_in(1, 25), rng.next_in(1, 25)))
                .collect()
        }
        "closed_sum" => {
            let mut rng = SplitMix64::stream(seed, salts::CLOSED_SUM);
            (0..samples)
                .map(|_| {
                    let n = rng.next_in(0, 20);
                    let alpha = sample_closed_sum_alpha(&mut rng, n);
                    closed_sum_identity(n, &alpha)
                })
                .collect()
        }
        "double_sum_swap" => {
            let mut rng = SplitMix64::stream(seed, salts::DOUBLE_SUM_SWAP);
            (0..samples)
                .map(|_| double_sum_swap(rng.next_in(1, 12), rng.next_in(1, 12)))
                .collect()
        }
        "reflection" => {
            let mut rng = SplitMix64::stream(seed, salts::REFLECTION);
            (0..samples)
                .map(|_| {
                    let (a, b) = sample_ordered_pair(&mut rng, 1, 40);
                    reflection_identity(a, b)
                })
                .collect()
        }
        "saalschutz" => {
            let mut rng = SplitMix64::stream(seed, salts::SAALSCHUTZ);
            (0..samples)
                .map(|_| {
                    let (a, b, c, d) = sample_saalschutz(&mut rng);
                    verify_saalschutz(&a, &b, &c, &d).expect("sampler yields admissible tuples")
                })
                .collect()
        }
        "split_recurrence" => {
            let mut rng = SplitMix64::stream(seed, salts::SPLIT_RECURRENCE);
            (0..samples)
                .map(|_| {
                    let (a, b) = sample_ordered_pair(&mut rng, 2, 25);
                    split_recurrence(a, b)
                })
                .collect()
        }
        "term_split" => {
            let mut rng = SplitMix64::stream(seed, salts::TERM_SPLIT);
            (0..samples)
                .map(|_| {
                    let (alpha, beta, j) = sample_term_split(&mut rng);
                    term_split_identity(&alpha, &beta, j)
                })
                .collect()
        }
        other => unreachable!("global family {other}"),
    }
}

/// The prime-free identity families with a caller-chosen sample count,
/// sorted for emission. This is what the `identities` CLI subcommand runs.
pub fn run_identity_families(seed: u64, samples: u64) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for name in [
        "binomial_square",
        "closed_sum",
        "double_sum_swap",
        "reflection",
        "saalschutz",
        "split_recurrence",
        "term_split",
    ] {
        let mut family = global_family(name, seed, samples);
        family.sort_by_cached_key(CheckReport::inputs_key);
        family.dedup();
        reports.extend(family);
    }
    reports
}

struct UnitOutcome {
    summary: ScanSummary,
    bytes: Option<Vec<u8>>,
}

fn process_unit(unit: &Unit, cfg: &ScanConfig, render: Option<ReportFormat>) -> UnitOutcome {
    let reports = run_unit(unit, cfg);
    let mut summary = ScanSummary::default();
    for report in &reports {
        summary.absorb(report);
    }
    let bytes = render.map(|format| {
        let mut buffer = Vec::new();
        for report in &reports {
            let line = match format {
                ReportFormat::Json => report.json_line(),
                ReportFormat::Csv => report.csv_row(),
            };
            buffer.extend_from_slice(line.as_bytes());
            buffer.push(b'\n');
        }
        buffer
    });
    UnitOutcome { summary, bytes }
}

fn merge(into: &mut ScanSummary, from: ScanSummary) {
    into.total_checks += from.total_checks;
    into.passes += from.passes;
    into.failures += from.failures;
    into.not_applicable += from.not_applicable;
    into.failures_detail.extend(from.failures_detail);
}

fn scan_inner(cfg: &ScanConfig, mut sink: Option<&mut dyn Write>) -> Result<ScanSummary> {
    cfg.validate()?;
    let primes = sieve_primes(cfg.prime_min, cfg.prime_max)?;
    // a prime window with no primes scans nothing, identities included
    let units = if primes.is_empty() {
        Vec::new()
    } else {
        build_units(cfg, &primes)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| {
            Error::InvalidConfig(format!("cannot build a {}-thread pool: {e}", cfg.jobs))
        })?;

    if let (Some(out), ReportFormat::Csv) = (&mut sink, cfg.format) {
        writeln!(out, "{}", CheckReport::csv_header())
            .map_err(|e| Error::InvalidConfig(format!("report sink failed: {e}")))?;
    }

    let render = sink.as_ref().map(|_| cfg.format);
    let mut total = ScanSummary::default();
    // bounded pipeline: a chunk of units is processed in parallel, then
    // drained in order, so memory stays proportional to the chunk
    for chunk in units.chunks((cfg.jobs * 2).max(1)) {
        let outcomes: Vec<UnitOutcome> = pool.install(|| {
            chunk
                .par_iter()
                .map(|unit| process_unit(unit, cfg, render))
                .collect()
        });
        for outcome in outcomes {
            merge(&mut total, outcome.summary);
            if let (Some(out), Some(bytes)) = (&mut sink, outcome.bytes) {
                out.write_all(&bytes)
                    .map_err(|e| Error::InvalidConfig(format!("report sink failed: {e}")))?;
            }
        }
    }

    if let Some(out) = &mut sink {
        if cfg.format == ReportFormat::Json {
            writeln!(out, "{}", total.json_line())
                .map_err(|e| Error::InvalidConfig(format!("report sink failed: {e}")))?;
        }
    }
    Ok(total)
}

/// Run every selected check over every admissible (p, alpha, beta) and
/// return the aggregate summary. Failure details carry the full inputs for
/// replay.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanSummary> {
    scan_inner(cfg, None)
}

/// Like [`run_scan`], additionally streaming every report row (and, for the
/// JSON format, the trailing summary object) to `out` in deterministic
/// order: check name, then prime, then inputs.
pub fn run_scan_to(cfg: &ScanConfig, out: &mut dyn Write) -> Result<ScanSummary> {
    scan_inner(cfg, Some(out))
}

/// Serialize an already-collected report list: rows sorted by check name,
/// prime, and inputs, as JSON lines with the summary object last, or as CSV
/// with a header and no summary row.
pub fn emit_report(
    reports: &[CheckReport],
    summary: &ScanSummary,
    format: ReportFormat,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let mut ordered: Vec<&CheckReport> = reports.iter().collect();
    ordered.sort_by_cached_key(|r| (r.check.clone(), r.prime(), r.inputs_key()));
    match format {
        ReportFormat::Csv => {
            writeln!(out, "{}", CheckReport::csv_header())?;
            for report in ordered {
                writeln!(out, "{}", report.csv_row())?;
            }
        }
        ReportFormat::Json => {
            for report in ordered {
                writeln!(out, "{}", report.json_line())?;
            }
            writeln!(out, "{}", summary.json_line())?;
        }
    }
    Ok(())
}

/// Build a summary from a finished report list.
pub fn summarize(reports: &[CheckReport]) -> ScanSummary {
    let mut summary = ScanSummary::default();
    for report in reports {
        summary.absorb(report);
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_primes(3, 10).unwrap(), vec![3, 5, 7]);
        assert_eq!(sieve_primes(5, 5).unwrap(), vec![5]);
        assert_eq!(sieve_primes(90, 100).unwrap(), vec![97]);
        assert_eq!(sieve_primes(2, 2).unwrap(), vec![2]);
        assert_eq!(sieve_primes(24, 28).unwrap(), Vec::<u64>::new());
        assert_eq!(
            sieve_primes(10, 3).unwrap_err(),
            Error::InvalidPrimeRange { lo: 10, hi: 3 }
        );
        assert_eq!(
            sieve_primes(1, 5).unwrap_err(),
            Error::InvalidPrimeRange { lo: 1, hi: 5 }
        );
    }

    #[test]
    fn enumeration_respects_grid_rules() {
        let list = enumerate_rationals(5, 2, 4);
        // d = 1: -4..4; d = 2: odd numerators only
        let expect: Vec<Rational> = [
            "-4", "-3", "-2", "-1", "0", "1", "2", "3", "4", "-3/2", "-1/2", "1/2", "3/2",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        assert_eq!(list, expect);

        // denominators divisible by p are dropped
        let with_p = enumerate_rationals(5, 5, 3);
        assert!(with_p
            .iter()
            .all(|r| r.denom() != &num_bigint::BigInt::from(5)));

        let cfg = ScanConfig {
            denom_max: 1,
            numer_bound: 4,
            ..ScanConfig::default()
        };
        let pairs = enumerate_params(5, &cfg);
        assert_eq!(pairs.len(), 81);
        let one = Rational::one();
        assert!(pairs.iter().any(|(a, b)| a == &one && b == &one));
    }

    #[test]
    fn scan_counts_are_consistent() {
        let cfg = ScanConfig {
            prime_min: 3,
            prime_max: 7,
            denom_max: 2,
            numer_bound: 3,
            checks: [CheckKind::Theorem].into_iter().collect(),
            jobs: 2,
            ..ScanConfig::default()
        };
        let summary = run_scan(&cfg).unwrap();
        assert_eq!(
            summary.total_checks,
            summary.passes + summary.failures + summary.not_applicable
        );
        assert_eq!(summary.failures, 0);
        assert!(summary.passes > 0);
        assert!(summary.not_applicable > 0);

        // every enumerated pair appears exactly once per prime
        let mut expected_total = 0u64;
        for p in [3u64, 5, 7] {
            expected_total += (enumerate_params(p, &cfg).len()) as u64;
        }
        assert_eq!(summary.total_checks, expected_total);
    }

    #[test]
    fn empty_prime_window_yields_empty_scan() {
        let cfg = ScanConfig {
            prime_min: 24,
            prime_max: 28,
            ..ScanConfig::default()
        };
        let summary = run_scan(&cfg).unwrap();
        assert_eq!(summary.total_checks, 0);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let cfg = ScanConfig {
            prime_min: 2,
            ..ScanConfig::default()
        };
        assert!(matches!(run_scan(&cfg), Err(Error::InvalidConfig(_))));

        let cfg = ScanConfig {
            mod_exponent: 0,
            ..ScanConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn scan_output_is_deterministic_across_jobs() {
        let base = ScanConfig {
            prime_min: 3,
            prime_max: 13,
            denom_max: 2,
            numer_bound: 3,
            checks: [CheckKind::Theorem, CheckKind::Sun, CheckKind::Identities]
                .into_iter()
                .collect(),
            seed: 7,
            ..ScanConfig::default()
        };
        let mut runs = Vec::new();
        for jobs in [1usize, 4] {
            let cfg = ScanConfig {
                jobs,
                ..base.clone()
            };
            let mut bytes = Vec::new();
            let summary = run_scan_to(&cfg, &mut bytes).unwrap();
            runs.push((bytes, summary));
        }
        assert_eq!(runs[0].0, runs[1].0);
        assert_eq!(runs[0].1, runs[1].1);
        assert!(!runs[0].0.is_empty());
    }

    #[test]
    fn emitted_rows_are_sorted() {
        let cfg = ScanConfig {
            prime_min: 3,
            prime_max: 7,
            denom_max: 1,
            numer_bound: 2,
            checks: [CheckKind::Sun, CheckKind::Mortenson].into_iter().collect(),
            format: ReportFormat::Csv,
            ..ScanConfig::default()
        };
        let mut bytes = Vec::new();
        run_scan_to(&cfg, &mut bytes).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CheckReport::csv_header());
        let rows: Vec<&str> = lines.collect();
        // mortenson rows (p = 5, 7) precede sun rows (p = 3, 5, 7)
        let mortenson = rows.iter().filter(|r| r.starts_with("mortenson")).count();
        assert_eq!(mortenson, 8);
        assert!(rows[0].starts_with("mortenson") && rows[0].contains("p=5"));
        assert!(rows[7].starts_with("mortenson") && rows[7].contains("p=7"));
        assert!(rows[8].starts_with("sun"));
    }

    #[test]
    fn emit_report_examples() {
        // empty summary gives the CSV header alone
        let mut bytes = Vec::new();
        emit_report(&[], &ScanSummary::default(), ReportFormat::Csv, &mut bytes).unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "check,inputs,computed,expected,pass\n"
        );

        // one passing check: one JSON row plus the summary object
        let report = crate::congruences::verify_sun(&Rational::from(2u64), 5).unwrap();
        let summary = summarize(std::slice::from_ref(&report));
        let mut bytes = Vec::new();
        emit_report(
            std::slice::from_ref(&report),
            &summary,
            ReportFormat::Json,
            &mut bytes,
        )
        .unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with(r#"{"check":"sun""#));
        assert!(lines[1].contains(r#""total_checks":1"#));

        // deterministic ordering on a mixed fixture
        let fixture = vec![
            crate::congruences::verify_sun(&Rational::from(2u64), 7).unwrap(),
            crate::congruences::verify_sun(&Rational::from(2u64), 5).unwrap(),
            crate::congruences::double_sum_swap(1, 1),
        ];
        let summary = summarize(&fixture);
        let mut bytes = Vec::new();
        emit_report(&fixture, &summary, ReportFormat::Csv, &mut bytes).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert!(rows[0].starts_with("double_sum_swap"));
        assert!(rows[1].starts_with("sun") && rows[1].contains("p=5"));
        assert!(rows[2].starts_with("sun") && rows[2].contains("p=7"));
    }

    #[test]
    fn identity_families_pass_and_reproduce() {
        let a = run_identity_families(0, 6);
        let b = run_identity_families(0, 6);
        assert_eq!(a, b);
        assert!(a.iter().all(|r| !r.is_fail()), "failures in {a:#?}");
        let c = run_identity_families(1, 6);
        assert_ne!(a, c);
    }
}
