//! Exact evaluation of truncated hypergeometric series over the rationals
//! and modulo odd prime powers, with verifiers for the congruences and
//! combinatorial identities those series satisfy, and a batch scanner that
//! grinds the verifiers over prime and parameter grids.
//!
//! The centrepiece congruence: for an odd prime p and p-integral alpha,
//! beta with `{alpha}_p, {beta}_p >= 1` and `{alpha}_p + {beta}_p <= p`,
//!
//! ```text
//! 3F2[alpha, beta, 1-alpha-beta; 1, 1 | 1]_p = 0  (mod p^2)
//! ```
//!
//! where `[...]_p` is the series truncated after p terms and `{x}_p` is the
//! least non-negative residue of x mod p. Around it sit Mortenson's and
//! Sun's 2F1 congruences, the Saalschutz closed form, and the exact
//! binomial identities (reflection, term split, closed sum, double-sum
//! swap, wraparound, kernel) that chain the 3F2 statement down to
//! elementary pieces. Every verifier reports pass, fail, or not-applicable;
//! nothing is approximate and no tolerances exist anywhere.
//!
//! Modules:
//! - [`rational`]: canonical arbitrary-precision rationals, rising
//!   factorials, generalized binomials
//! - [`padic`]: p-integrality, residue reduction mod p^k, least residues,
//!   Legendre symbols
//! - [`hypergeom`]: truncated series evaluation (exact and mod p^k) and the
//!   Saalschutz identity
//! - [`congruences`]: one verifier per congruence or identity
//! - [`scan`]: prime sieving, parameter enumeration, parallel batch runs,
//!   deterministic JSON/CSV reports
//! - [`sampling`]: the seeded SplitMix64 streams behind every sampled check

pub mod congruences;
pub mod error;
pub mod hypergeom;
pub mod padic;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod scan;

pub use error::{Error, Result};
pub use hypergeom::{
    saalschutz_closed_form, series_term, truncated_pfq_exact, truncated_pfq_mod, verify_saalschutz,
    SeriesSpec,
};
pub use padic::{
    is_p_integral, is_prime_u64, least_nonneg_residue, legendre, mod_inverse, reduce_mod,
    PrimePower, ResidueClass,
};
pub use rational::{binomial_general, binomial_uint, factorial, rising_factorial, Rational};
pub use report::CheckReport;
pub use scan::{
    emit_report, enumerate_params, enumerate_rationals, run_identity_families, run_scan,
    run_scan_to, sieve_primes, CheckKind, ReportFormat, ScanConfig, ScanSummary,
};
