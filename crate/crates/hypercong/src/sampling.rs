//! Deterministic sampling for the identity checks.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood's mixer), chosen so a
//! scan seed pins the whole sample stream on every platform. Each check
//! family draws from its own stream, derived from `(seed, family salt)` and,
//! for per-prime families, the prime; adding primes or families to a scan
//! never perturbs another family's samples.

use crate::padic::is_p_integral;
use crate::rational::Rational;

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then two xor-shift multiplies.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream for a check family: mixes the salt into the seed before use.
    pub fn stream(seed: u64, salt: u64) -> Self {
        let mut rng = SplitMix64::new(seed ^ salt.wrapping_mul(0xBF58476D1CE4E5B9));
        rng.next_u64(); // decouple from the raw seed
        rng
    }

    /// Stream for a per-prime check family.
    pub fn stream_at_prime(seed: u64, salt: u64, p: u64) -> Self {
        let mut rng = SplitMix64::stream(seed, salt);
        let fold = rng.next_u64() ^ p.wrapping_mul(0x94D049BB133111EB);
        SplitMix64::new(fold)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `[lo, hi]` by reduction. The tiny modulo bias is
    /// irrelevant here; determinism is what matters.
    pub fn next_in(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = hi - lo + 1;
        lo + self.next_u64() % span
    }

    pub fn next_signed(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// A canonical rational with numerator in `[-numer_bound, numer_bound]`
    /// and denominator in `[1, denom_max]`.
    pub fn next_rational(&mut self, numer_bound: i64, denom_max: u64) -> Rational {
        let numerator = self.next_signed(-numer_bound, numer_bound);
        let denominator = self.next_in(1, denom_max);
        Rational::new(numerator.into(), (denominator as i64).into())
            .expect("denominator is positive")
    }

    /// A nonzero p-integral rational, for parameters that feed residue
    /// reductions.
    pub fn next_p_integral(&mut self, numer_bound: i64, denom_max: u64, p: u64) -> Rational {
        loop {
            let r = self.next_rational(numer_bound, denom_max);
            if !r.is_zero() && is_p_integral(&r, p) {
                return r;
            }
        }
    }
}

/// Family salts. Keeping them in one table makes accidental stream collisions
/// easy to spot.
pub mod salts {
    pub const SAALSCHUTZ: u64 = 1;
    pub const REFLECTION: u64 = 2;
    pub const TERM_SPLIT: u64 = 3;
    pub const SPLIT_RECURRENCE: u64 = 4;
    pub const CLOSED_SUM: u64 = 5;
    pub const DOUBLE_SUM_SWAP: u64 = 6;
    pub const BINOMIAL_SQUARE: u64 = 7;
    pub const SHIFT_CONGRUENCE: u64 = 8;
    pub const SHIFT_INVARIANCE: u64 = 9;
    pub const WRAPAROUND: u64 = 10;
    pub const KERNEL: u64 = 11;
    pub const CONSISTENCY: u64 = 12;
}

/// An admissible Saalschutz tuple `(a, b, c, d)`: `c` in `{0, -1, ..., -6}`,
/// rational `a`, `b`, `d` avoiding both vanishing denominator Pochhammers and
/// vanishing lower-parameter factors before termination.
pub fn sample_saalschutz(rng: &mut SplitMix64) -> (Rational, Rational, Rational, Rational) {
    loop {
        let a = rng.next_rational(8, 4);
        let b = rng.next_rational(8, 4);
        let length = rng.next_in(0, 6);
        let c = -Rational::from(length);
        let d = rng.next_rational(8, 4);

        let e = &a + &b + &c + Rational::one() - &d;
        // no vanishing factor in (x)_length
        let safe = |x: &Rational| (0..length).all(|j| !(x + Rational::from(j)).is_zero());
        if safe(&d) && safe(&e) && safe(&(&d - &a - &b)) {
            return (a, b, c, d);
        }
    }
}

/// A pole-free term-split instance `(alpha, beta, j)`.
pub fn sample_term_split(rng: &mut SplitMix64) -> (Rational, Rational, u64) {
    loop {
        let alpha = rng.next_rational(10, 4);
        let beta = rng.next_rational(10, 4);
        let j = rng.next_in(0, 8);
        if alpha.is_zero() {
            continue;
        }
        if (Rational::from(j + 1) + &alpha - &beta).is_zero() {
            continue;
        }
        return (alpha, beta, j);
    }
}

/// A pole-free argument for the closed-sum identity at order `n`.
pub fn sample_closed_sum_alpha(rng: &mut SplitMix64, n: u64) -> Rational {
    loop {
        let alpha = rng.next_rational(60, 6);
        let pole = (0..=n).any(|j| {
            let j_rat = Rational::from(j);
            (&j_rat + &alpha - Rational::from(n) - Rational::one()).is_zero()
                || (&j_rat + &alpha - Rational::from(n)).is_zero()
        });
        if !pole {
            return alpha;
        }
    }
}

/// An integer pair `1 <= b <= a <= max`.
pub fn sample_ordered_pair(rng: &mut SplitMix64, min: u64, max: u64) -> (u64, u64) {
    let a = rng.next_in(min, max);
    let b = rng.next_in(min, a);
    (a, b)
}

/// A pair `(a, b)` in `[1, p-1]^2` with `a + b >= p`.
pub fn sample_wrap_pair(rng: &mut SplitMix64, p: u64) -> (u64, u64) {
    loop {
        let a = rng.next_in(1, p - 1);
        let b = rng.next_in(1, p - 1);
        if a + b >= p {
            return (a, b);
        }
    }
}
