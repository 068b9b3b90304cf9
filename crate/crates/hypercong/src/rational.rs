//! Exact arbitrary-precision rational arithmetic in canonical form, plus the
//! factorial-like products everything else is built from: rising factorials
//! (Pochhammer symbols) and generalized binomial coefficients.
//!
//! Canonical form means `gcd(|numerator|, denominator) = 1`, `denominator >= 1`,
//! and zero is always `0/1`. Every operation re-canonicalizes eagerly so that
//! structural equality is value equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
///
/// Parses from and prints to the whitespace-free `a/b` syntax, with the
/// denominator omitted when it is 1: `-3`, `5/6`, `0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `numerator / denominator`, reducing to canonical form.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numerator, denominator)))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if the denominator is 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// The value as a `u64`, if it is an integer in range.
    pub fn as_u64(&self) -> Option<u64> {
        self.as_integer().and_then(|n| n.to_u64())
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    /// Integer power with non-negative exponent.
    pub fn pow(&self, exp: u32) -> Rational {
        Rational(self.0.pow(exp as i32))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::checked_div`] where the
    /// divisor is not known to be nonzero.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        (&self).div(rhs)
    }
}

impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self.div(&rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parse the `a/b` syntax: optional sign, digits, optionally `/` and a
    /// positive integer denominator. No whitespace anywhere.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseRational(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };

        let unsigned = num_str
            .strip_prefix('-')
            .or_else(|| num_str.strip_prefix('+'))
            .unwrap_or(num_str);
        if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let numerator = BigInt::from_str(num_str).map_err(|_| err())?;

        let denominator = match den_str {
            None => BigInt::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err());
                }
                let d = BigInt::from_str(d).map_err(|_| err())?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                d
            }
        };

        Rational::new(numerator, denominator)
    }
}

/// The rising factorial (Pochhammer symbol) `(a)_k = a (a+1) ... (a+k-1)`,
/// with `(a)_0 = 1`.
///
/// Once a factor hits zero the product is zero for every larger `k`, so the
/// incremental product short-circuits there.
pub fn rising_factorial(a: &Rational, k: u64) -> Rational {
    let mut product = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        if factor.is_zero() {
            return Rational::zero();
        }
        product = product * &factor;
        factor = factor + Rational::one();
    }
    product
}

/// The generalized binomial coefficient `C(a, k) = a (a-1) ... (a-k+1) / k!`
/// for rational `a` and non-negative integer `k`.
pub fn binomial_general(a: &Rational, k: u64) -> Rational {
    let mut product = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        if factor.is_zero() {
            return Rational::zero();
        }
        product = product * &factor;
        factor = factor - Rational::one();
    }
    product / Rational::from_integer(BigInt::from(factorial(k)))
}

/// `k!` as an arbitrary-precision integer.
pub fn factorial(k: u64) -> BigUint {
    let mut product = BigUint::one();
    for i in 2..=k {
        product *= BigUint::from(i);
    }
    product
}

/// The ordinary binomial coefficient `C(n, k)` for unsigned integers, zero
/// when `k > n`.
pub fn binomial_uint(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut product = BigUint::one();
    for i in 0..k {
        product = product * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    product
}
