use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors reported by the library.
///
/// Verifiers never fold a violated theorem hypothesis into an error; those
/// come back as a not-applicable [`crate::report::CheckReport`]. Errors are
/// reserved for inputs outside a function's domain (division by zero, a
/// composite where a prime is required, a non-p-integral value fed to a
/// residue reduction, and so on).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("cannot parse series spec from {input:?}: {reason}")]
    ParseSeries { input: String, reason: String },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime power exponent must be >= 1")]
    ZeroExponent,

    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotInvertible {
        value: BigInt,
        modulus: BigUint,
        gcd: BigUint,
    },

    #[error("{value} is not {prime}-integral")]
    NotPIntegral { value: String, prime: u64 },

    #[error("lower parameter {parameter} has a vanishing Pochhammer symbol ({parameter})_{k}")]
    ZeroLowerPochhammer { parameter: String, k: u64 },

    #[error("series term at k = {k} is not {prime}-integral")]
    NonIntegralTerm { k: u64, prime: u64 },

    #[error("series truncation must be >= 1")]
    ZeroTruncation,

    #[error("parameter c = {0} is not a non-positive integer")]
    NonTerminatingParameter(String),

    #[error("denominator Pochhammer ({base})_{len} vanishes")]
    ZeroDenominatorPochhammer { base: String, len: u64 },

    #[error("invalid prime range [{lo}, {hi}]")]
    InvalidPrimeRange { lo: u64, hi: u64 },

    #[error("prime {0} is below 5")]
    PrimeBelowFive(u64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
