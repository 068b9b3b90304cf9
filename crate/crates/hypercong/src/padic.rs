//! p-adic plumbing for odd primes: p-integrality tests, reduction of
//! p-integral rationals into residue rings mod p^k, least non-negative
//! residues, and Legendre symbols via Euler's criterion.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Deterministic primality test for `u64`.
///
/// Strong-pseudoprime test with the base set {2, 3, 5, 7, 11, 13, 17, 19,
/// 23, 29, 31, 37}, which is exact for all inputs below 3.3 * 10^24 and in
/// particular for the whole `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // a composite below 41^2 would have a prime factor <= 37
    if n < 41 * 41 {
        return true;
    }

    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }

    let mul = |a: u64, b: u64| -> u64 { ((a as u128 * b as u128) % n as u128) as u64 };
    let pow = |mut base: u64, mut exp: u64| -> u64 {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };

    'witness: for a in BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd prime power p^k, the modulus of every congruence check.
///
/// Construction verifies that `p` is an odd prime (p = 2 is rejected) and
/// that `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    prime: u64,
    exponent: u32,
    modulus: BigUint,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if prime < 3 || !is_prime_u64(prime) {
            return Err(Error::NotOddPrime(prime));
        }
        if exponent == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(PrimePower {
            prime,
            exponent,
            modulus: BigUint::from(prime).pow(exponent),
        })
    }

    /// Shorthand for p^2, the modulus of the supercongruence checks.
    pub fn square(prime: u64) -> Result<Self> {
        PrimePower::new(prime, 2)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.modulus)
    }
}

/// A residue `value` in `[0, modulus)` together with its modulus.
///
/// Prints as `v (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    value: BigUint,
    modulus: BigUint,
}

impl ResidueClass {
    /// Reduce `value` into `[0, modulus)`.
    pub fn new(value: BigUint, modulus: BigUint) -> Self {
        assert!(!modulus.is_zero(), "residue modulus must be positive");
        ResidueClass {
            value: value % &modulus,
            modulus,
        }
    }

    pub fn zero(modulus: BigUint) -> Self {
        ResidueClass::new(BigUint::zero(), modulus)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, rhs: &ResidueClass) -> ResidueClass {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        ResidueClass::new(&self.value + &rhs.value, self.modulus.clone())
    }

    pub fn mul(&self, rhs: &ResidueClass) -> ResidueClass {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        ResidueClass::new(&self.value * &rhs.value, self.modulus.clone())
    }

    pub fn neg(&self) -> ResidueClass {
        if self.value.is_zero() {
            self.clone()
        } else {
            ResidueClass {
                value: &self.modulus - &self.value,
                modulus: self.modulus.clone(),
            }
        }
    }

    pub fn sub(&self, rhs: &ResidueClass) -> ResidueClass {
        self.add(&rhs.neg())
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// True iff `p` does not divide the (canonical) denominator of `r`.
pub fn is_p_integral(r: &Rational, p: u64) -> bool {
    (r.denom() % BigInt::from(p)) != BigInt::zero()
}

pub(crate) fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// Inverse mod `m` over machine words; `a` must already lie in `[0, m)`.
pub(crate) fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    let mut inv = old_s % m as i128;
    if inv < 0 {
        inv += m as i128;
    }
    Some(inv as u64)
}

/// `{r}_p` without re-validating primality; the caller guarantees an odd
/// prime. Falls back to arbitrary-precision reduction when the operands do
/// not fit machine words.
pub(crate) fn least_nonneg_residue_unchecked(r: &Rational, p: u64) -> Result<u64> {
    if let (Some(num), Some(den)) = (r.numer().to_i64(), r.denom().to_i64()) {
        let den_mod = den as u64 % p;
        if den_mod == 0 {
            return Err(Error::NotPIntegral {
                value: r.to_string(),
                prime: p,
            });
        }
        let num_mod = num.rem_euclid(p as i64) as u64;
        let inv = inv_mod_u64(den_mod, p).expect("nonzero residue of a prime modulus");
        return Ok(mulmod_u64(num_mod, inv, p));
    }

    if !is_p_integral(r, p) {
        return Err(Error::NotPIntegral {
            value: r.to_string(),
            prime: p,
        });
    }
    let p_int = BigInt::from(p);
    let num = r.numer().mod_floor(&p_int);
    let den = r.denom().mod_floor(&p_int).to_u64().expect("below p");
    let inv = inv_mod_u64(den, p).expect("nonzero residue of a prime modulus");
    let num = num.to_u64().expect("below p");
    Ok(mulmod_u64(num, inv, p))
}

/// The inverse of `a` modulo `m`, in `[0, m)`, via the extended Euclidean
/// algorithm. Reports the offending gcd when `a` is not invertible.
pub fn mod_inverse(a: &BigInt, modulus: &BigUint) -> Result<BigUint> {
    let m = BigInt::from(modulus.clone());
    let a_red = a.mod_floor(&m);
    let ext = a_red.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: a.clone(),
            modulus: modulus.clone(),
            gcd: ext
                .gcd
                .to_biguint()
                .expect("gcd of nonzero inputs is positive"),
        });
    }
    Ok(ext
        .x
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor is non-negative"))
}

/// Reduce a p-integral rational into the residue ring mod p^k:
/// `num(r) * den(r)^{-1} (mod p^k)`.
pub fn reduce_mod(r: &Rational, pk: &PrimePower) -> Result<ResidueClass> {
    if !is_p_integral(r, pk.prime()) {
        return Err(Error::NotPIntegral {
            value: r.to_string(),
            prime: pk.prime(),
        });
    }
    let m = BigInt::from(pk.modulus().clone());
    let num = r.numer().mod_floor(&m).to_biguint().expect("non-negative");
    let den_inv = mod_inverse(r.denom(), pk.modulus())?;
    Ok(ResidueClass::new(num * den_inv, pk.modulus().clone()))
}

/// The least non-negative residue of a p-integral rational modulo `p`: the
/// unique integer in `[0, p)` congruent to `r`.
pub fn least_nonneg_residue(r: &Rational, p: u64) -> Result<u64> {
    PrimePower::new(p, 1)?;
    least_nonneg_residue_unchecked(r, p)
}

/// The Legendre symbol (a/p) in {-1, 0, +1}, computed by Euler's criterion
/// `a^((p-1)/2) (mod p)`.
///
/// The caller must supply an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    debug_assert!(p >= 3 && is_prime_u64(p), "legendre needs an odd prime");
    let p_int = BigInt::from(p);
    let base = a.mod_floor(&p_int);
    if base.is_zero() {
        return 0;
    }
    let e = base.modpow(&BigInt::from((p - 1) / 2), &p_int);
    if e.is_one() {
        1
    } else if e == &p_int - 1 {
        -1
    } else {
        unreachable!("Euler's criterion returned {e} for p = {p}; p is not prime")
    }
}
