//! Truncated hypergeometric series: exact evaluation over the rationals,
//! term-wise evaluation in a residue ring mod p^k, and the terminating
//! Saalschutz identity.
//!
//! Terms are computed incrementally, `term_{k+1} = term_k * ratio_k` with
//!
//! ```text
//! ratio_k = product(upper_i + k) * x / (product(lower_j + k) * (k + 1))
//! ```
//!
//! Once an upper parameter (or a zero argument) kills the series, the zero
//! state is latched: every later term is exactly 0, with no divisions and no
//! further lower-parameter inspection. A lower-parameter factor that hits
//! zero while terms are still live is always an error, even if an upper
//! factor vanishes at the same step.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{is_p_integral, mod_inverse, PrimePower, ResidueClass};
use crate::rational::{rising_factorial, Rational};
use crate::report::{inputs_from, CheckReport};

/// One truncated pFq evaluation: upper and lower parameter lists, the
/// argument, and the truncation length (the series sums k = 0 .. n-1).
///
/// Serializes to the single-line form `pFq[u1,u2,...;l1,...;x;n]` using the
/// `a/b` rational syntax, e.g. `pFq[1/2,1/2;1;1;7]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: Rational,
    truncation: u64,
}

impl SeriesSpec {
    pub fn new(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        argument: Rational,
        truncation: u64,
    ) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::ZeroTruncation);
        }
        Ok(SeriesSpec {
            upper,
            lower,
            argument,
            truncation,
        })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |list: &[Rational]| {
            list.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "pFq[{};{};{};{}]",
            join(&self.upper),
            join(&self.lower),
            self.argument,
            self.truncation
        )
    }
}

impl FromStr for SeriesSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParseSeries {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s
            .strip_prefix("pFq[")
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(|| err("expected pFq[...]"))?;
        let segments: Vec<&str> = body.split(';').collect();
        let [upper, lower, argument, truncation] = segments.as_slice() else {
            return Err(err("expected 4 ';'-separated segments"));
        };

        let parse_list = |seg: &str| -> Result<Vec<Rational>> {
            if seg.is_empty() {
                return Ok(Vec::new());
            }
            seg.split(',').map(|item| item.parse()).collect()
        };

        let truncation: u64 = truncation
            .parse()
            .map_err(|_| err("truncation is not an unsigned integer"))?;
        SeriesSpec::new(
            parse_list(upper)?,
            parse_list(lower)?,
            argument.parse()?,
            truncation,
        )
    }
}

/// What stepping the exact term from index `j` to `j + 1` produced.
enum Step {
    Next(Rational),
    /// An upper factor (or a zero argument) vanished: terms `j+1` onward are
    /// exactly 0.
    Latched,
}

fn exact_step(spec: &SeriesSpec, j: u64, term: &Rational) -> Result<Step> {
    let shift = Rational::from(j);

    // A vanishing lower factor at a live step is an error no matter what the
    // numerator does at the same step.
    for l in &spec.lower {
        if (l + &shift).is_zero() {
            return Err(Error::ZeroLowerPochhammer {
                parameter: l.to_string(),
                k: j + 1,
            });
        }
    }

    if spec.argument.is_zero() {
        return Ok(Step::Latched);
    }
    let mut numerator = spec.argument.clone();
    for u in &spec.upper {
        let factor = u + &shift;
        if factor.is_zero() {
            return Ok(Step::Latched);
        }
        numerator = numerator * factor;
    }

    let mut denominator = Rational::from(j + 1);
    for l in &spec.lower {
        denominator = denominator * (l + &shift);
    }

    Ok(Step::Next(term * &numerator / denominator))
}

/// The k-th series term
/// `product((upper_i)_k) / product((lower_j)_k) * x^k / k!` as an exact
/// rational.
pub fn series_term(spec: &SeriesSpec, k: u64) -> Result<Rational> {
    let mut term = Rational::one();
    for j in 0..k {
        match exact_step(spec, j, &term)? {
            Step::Next(next) => term = next,
            Step::Latched => return Ok(Rational::zero()),
        }
    }
    Ok(term)
}

/// The exact truncated sum over k = 0 .. n-1.
pub fn truncated_pfq_exact(spec: &SeriesSpec) -> Result<Rational> {
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for j in 0..spec.truncation - 1 {
        match exact_step(spec, j, &term)? {
            Step::Next(next) => term = next,
            Step::Latched => break,
        }
        sum = sum + &term;
    }
    Ok(sum)
}

/// A step ratio split into p-unit parts and a p-valuation delta.
struct ModStep {
    numerator_unit: BigUint,
    denominator_unit: BigUint,
    valuation_delta: i64,
}

/// Strip powers of `p` and reduce the signed unit part into `[0, m)`.
/// Returns `(unit mod m, valuation)`. The input must be nonzero.
pub(crate) fn split_unit(value: &BigInt, p: &BigInt, m: &BigInt) -> (BigUint, i64) {
    debug_assert!(!value.is_zero());
    let mut unit = value.clone();
    let mut valuation = 0i64;
    loop {
        let (q, r) = unit.div_rem(p);
        if r.is_zero() {
            unit = q;
            valuation += 1;
        } else {
            break;
        }
    }
    let reduced = unit
        .mod_floor(m)
        .to_biguint()
        .expect("mod_floor is non-negative");
    (reduced, valuation)
}

/// The truncated sum reduced term-wise in the residue ring mod p^k.
///
/// Every parameter and the argument must be p-integral; each term's
/// p-valuation is tracked alongside its unit part, so residues stay bounded
/// by the modulus throughout, and a term with negative valuation (a
/// non-p-integral term) is reported with its index. Agrees with
/// `reduce_mod(truncated_pfq_exact(spec), pk)` whenever both are defined.
pub fn truncated_pfq_mod(spec: &SeriesSpec, pk: &PrimePower) -> Result<ResidueClass> {
    // machine-word evaluation when the modulus and parameters allow it;
    // scans live here, the bignum path is the general fallback
    if let Some(result) = truncated_pfq_mod_small(spec, pk) {
        return result;
    }
    truncated_pfq_mod_general(spec, pk)
}

/// One series parameter squeezed into machine words.
#[derive(Clone, Copy)]
struct SmallParam {
    num: i64,
    den: i64,
}

/// Convert parameters, requiring that every stepped factor `num + j den`
/// with `j < n` stays inside i64.
fn to_small(list: &[Rational], n: u64) -> Option<Vec<SmallParam>> {
    list.iter()
        .map(|r| {
            let num = r.numer().to_i64()?;
            let den = r.denom().to_i64()?;
            let reach = num.unsigned_abs() as i128 + n as i128 * den as i128;
            (reach < i64::MAX as i128).then_some(SmallParam { num, den })
        })
        .collect()
}

fn truncated_pfq_mod_small(spec: &SeriesSpec, pk: &PrimePower) -> Option<Result<ResidueClass>> {
    let m = pk.modulus().to_u64()?;
    if spec.truncation >= u32::MAX as u64 {
        return None;
    }
    let upper = to_small(&spec.upper, spec.truncation)?;
    let lower = to_small(&spec.lower, spec.truncation)?;
    let argument = to_small(std::slice::from_ref(&spec.argument), 1)?[0];
    Some(small_eval(spec, pk, m, &upper, &lower, argument))
}

fn small_eval(
    spec: &SeriesSpec,
    pk: &PrimePower,
    m: u64,
    upper: &[SmallParam],
    lower: &[SmallParam],
    argument: SmallParam,
) -> Result<ResidueClass> {
    use crate::padic::{inv_mod_u64, mulmod_u64};

    let p = pk.prime();
    let n = spec.truncation;

    // p-integrality, in the same order as the general path
    for (params, originals) in [(upper, &spec.upper), (lower, &spec.lower)] {
        for (param, original) in params.iter().zip(originals.iter()) {
            if (param.den as u64).is_multiple_of(p) {
                return Err(Error::NotPIntegral {
                    value: original.to_string(),
                    prime: p,
                });
            }
        }
    }
    if (argument.den as u64).is_multiple_of(p) {
        return Err(Error::NotPIntegral {
            value: spec.argument.to_string(),
            prime: p,
        });
    }

    // strip p powers, reduce the magnitude mod m, remember the sign
    let split = |f: i64| -> (u64, i64, bool) {
        let negative = f < 0;
        let mut u = f.unsigned_abs();
        let mut v = 0i64;
        while u.is_multiple_of(p) {
            u /= p;
            v += 1;
        }
        (u % m, v, negative)
    };

    // pass 1: per-step (numerator unit, denominator unit, valuation, sign)
    struct SmallStep {
        numerator: u64,
        denominator: u64,
        delta: i64,
        negative: bool,
    }
    let mut steps: Vec<SmallStep> = Vec::with_capacity((n - 1).min(4096) as usize);
    'collect: for k in 0..n - 1 {
        let j = k as i64;
        let mut numerator = 1u64;
        let mut denominator = 1u64;
        let mut delta = 0i64;
        let mut negative = false;

        for (param, original) in lower.iter().zip(spec.lower.iter()) {
            let f = param.num + j * param.den;
            if f == 0 {
                return Err(Error::ZeroLowerPochhammer {
                    parameter: original.to_string(),
                    k: k + 1,
                });
            }
            let (u, v, neg) = split(f);
            denominator = mulmod_u64(denominator, u, m);
            delta -= v;
            negative ^= neg;
            numerator = mulmod_u64(numerator, param.den as u64 % m, m);
        }

        if argument.num == 0 {
            break 'collect;
        }
        let (u, v, neg) = split(argument.num);
        numerator = mulmod_u64(numerator, u, m);
        delta += v;
        negative ^= neg;
        denominator = mulmod_u64(denominator, argument.den as u64 % m, m);

        for param in upper {
            let f = param.num + j * param.den;
            if f == 0 {
                break 'collect;
            }
            let (u, v, neg) = split(f);
            numerator = mulmod_u64(numerator, u, m);
            delta += v;
            negative ^= neg;
            denominator = mulmod_u64(denominator, param.den as u64 % m, m);
        }

        let (u, v, _) = split(j + 1);
        denominator = mulmod_u64(denominator, u, m);
        delta -= v;

        steps.push(SmallStep {
            numerator,
            denominator,
            delta,
            negative,
        });
    }

    // pass 2: one inversion covers every step denominator
    let mut prefix = Vec::with_capacity(steps.len());
    let mut product = 1u64;
    for step in &steps {
        product = mulmod_u64(product, step.denominator, m);
        prefix.push(product);
    }
    let mut inv_suffix = inv_mod_u64(product, m).expect("denominator units are coprime to p");

    // pass 3: accumulate unit * p^valuation term-wise, walking the
    // inverse product backwards
    let mut inverses = vec![0u64; steps.len()];
    for i in (0..steps.len()).rev() {
        inverses[i] = if i == 0 {
            inv_suffix
        } else {
            mulmod_u64(inv_suffix, prefix[i - 1], m)
        };
        inv_suffix = mulmod_u64(inv_suffix, steps[i].denominator, m);
    }

    let exponent = pk.exponent() as i64;
    let mut acc = 1u64 % m; // term 0
    let mut unit = 1u64;
    let mut valuation = 0i64;
    for (i, step) in steps.iter().enumerate() {
        unit = mulmod_u64(unit, mulmod_u64(step.numerator, inverses[i], m), m);
        if step.negative {
            unit = m - unit;
        }
        valuation += step.delta;
        if valuation < 0 {
            return Err(Error::NonIntegralTerm {
                k: i as u64 + 1,
                prime: p,
            });
        }
        if valuation < exponent {
            let mut scale = 1u64;
            for _ in 0..valuation {
                scale *= p; // p^valuation < p^exponent = m
            }
            acc = (acc + mulmod_u64(unit, scale, m)) % m;
        }
    }
    Ok(ResidueClass::new(acc.into(), pk.modulus().clone()))
}

fn truncated_pfq_mod_general(spec: &SeriesSpec, pk: &PrimePower) -> Result<ResidueClass> {
    let p = pk.prime();
    let not_integral = |r: &Rational| Error::NotPIntegral {
        value: r.to_string(),
        prime: p,
    };
    for param in spec.upper.iter().chain(&spec.lower) {
        if !is_p_integral(param, p) {
            return Err(not_integral(param));
        }
    }
    if !is_p_integral(&spec.argument, p) {
        return Err(not_integral(&spec.argument));
    }

    let p_int = BigInt::from(p);
    let m_int = BigInt::from(pk.modulus().clone());
    let m = pk.modulus();

    // Pass 1: per-step factor collection. Numerator side takes the upper
    // factor numerators and num(x); denominator side takes the parameter
    // denominators, num(lower factor) and (j + 1). A parameter a/d stepped
    // by j is (a + j*d)/d, already canonical since gcd(a, d) = 1.
    let mut steps: Vec<ModStep> = Vec::new();
    'collect: for j in 0..spec.truncation - 1 {
        let j_int = BigInt::from(j);

        let mut numerator = BigInt::one();
        let mut denominator = BigInt::from(j + 1);
        for l in &spec.lower {
            let factor_num = l.numer() + &j_int * l.denom();
            if factor_num.is_zero() {
                return Err(Error::ZeroLowerPochhammer {
                    parameter: l.to_string(),
                    k: j + 1,
                });
            }
            // dividing by (a + j d)/d multiplies the ratio by d/(a + j d)
            denominator *= factor_num;
            numerator *= l.denom();
        }

        // a vanishing numerator latches the series: terms j+1 .. are 0
        if spec.argument.is_zero() {
            break 'collect;
        }
        numerator *= spec.argument.numer();
        denominator *= spec.argument.denom();
        for u in &spec.upper {
            let factor_num = u.numer() + &j_int * u.denom();
            if factor_num.is_zero() {
                break 'collect;
            }
            numerator *= factor_num;
            denominator *= u.denom();
        }

        let (numerator_unit, nv) = split_unit(&numerator, &p_int, &m_int);
        let (denominator_unit, dv) = split_unit(&denominator, &p_int, &m_int);
        steps.push(ModStep {
            numerator_unit,
            denominator_unit,
            valuation_delta: nv - dv,
        });
    }

    // Pass 2: one batched inversion covers every step denominator.
    let inverses = batch_inverse(steps.iter().map(|s| s.denominator_unit.clone()), m)?;

    // Pass 3: accumulate unit * p^valuation term-wise.
    let exponent = pk.exponent() as i64;
    let mut acc = BigUint::zero();
    let mut unit = BigUint::one();
    let mut valuation = 0i64;
    let mut contribute = |unit: &BigUint, valuation: i64, k: u64| -> Result<()> {
        if valuation < 0 {
            return Err(Error::NonIntegralTerm { k, prime: p });
        }
        if valuation < exponent {
            let scale = BigUint::from(p).pow(valuation as u32);
            acc = (&acc + unit * scale) % m;
        }
        Ok(())
    };

    contribute(&unit, valuation, 0)?;
    for (idx, step) in steps.iter().enumerate() {
        unit = unit * &step.numerator_unit % m;
        unit = unit * &inverses[idx] % m;
        valuation += step.valuation_delta;
        contribute(&unit, valuation, idx as u64 + 1)?;
    }

    Ok(ResidueClass::new(acc, m.clone()))
}

/// Montgomery batch inversion: one extended gcd for the whole list.
/// Every element must be a unit mod `m`.
pub(crate) fn batch_inverse<I: Iterator<Item = BigUint>>(
    values: I,
    m: &BigUint,
) -> Result<Vec<BigUint>> {
    let values: Vec<BigUint> = values.collect();
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = BigUint::one();
    for v in &values {
        acc = &acc * v % m;
        prefix.push(acc.clone());
    }
    let mut inv_acc = mod_inverse(&BigInt::from(prefix.last().unwrap().clone()), m)?;
    let mut out = vec![BigUint::zero(); values.len()];
    for i in (0..values.len()).rev() {
        if i == 0 {
            out[0] = inv_acc.clone();
        } else {
            out[i] = &inv_acc * &prefix[i - 1] % m;
            inv_acc = inv_acc * &values[i] % m;
        }
    }
    Ok(out)
}

/// Closed form of the terminating Saalschutzian 3F2 at argument 1:
///
/// ```text
/// 3F2[a, b, c; d, e | 1] = (d-a)_|c| (d-b)_|c| / ( (d)_|c| (d-a-b)_|c| )
/// ```
///
/// where `c` is a non-positive integer and the implied fifth parameter is
/// `e = a + b + c + 1 - d`. The two vanishing-denominator cases and a
/// non-terminating `c` are reported as distinct errors.
pub fn saalschutz_closed_form(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<Rational> {
    let length = saalschutz_length(c)?;
    let d_minus_ab = d - a - b;

    let den_d = rising_factorial(d, length);
    if den_d.is_zero() {
        return Err(Error::ZeroDenominatorPochhammer {
            base: d.to_string(),
            len: length,
        });
    }
    let den_dab = rising_factorial(&d_minus_ab, length);
    if den_dab.is_zero() {
        return Err(Error::ZeroDenominatorPochhammer {
            base: d_minus_ab.to_string(),
            len: length,
        });
    }

    let numerator = rising_factorial(&(d - a), length) * rising_factorial(&(d - b), length);
    Ok(numerator / (den_d * den_dab))
}

fn saalschutz_length(c: &Rational) -> Result<u64> {
    let c_int = c
        .as_integer()
        .ok_or_else(|| Error::NonTerminatingParameter(c.to_string()))?;
    if c_int > BigInt::zero() {
        return Err(Error::NonTerminatingParameter(c.to_string()));
    }
    (-c_int)
        .to_u64()
        .ok_or_else(|| Error::InvalidConfig(format!("saalschutz length |{c}| exceeds u64")))
}

/// Check the Saalschutz identity by summing the terminating 3F2 directly
/// through k = |c| and comparing with [`saalschutz_closed_form`].
pub fn verify_saalschutz(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<CheckReport> {
    let length = saalschutz_length(c)?;
    let closed = saalschutz_closed_form(a, b, c, d)?;
    let e = a + b + c + Rational::one() - d;
    let spec = SeriesSpec::new(
        vec![a.clone(), b.clone(), c.clone()],
        vec![d.clone(), e],
        Rational::one(),
        length + 1,
    )?;
    let sum = truncated_pfq_exact(&spec)?;
    Ok(CheckReport::compare(
        "saalschutz",
        inputs_from(&[
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("c", c.to_string()),
            ("d", d.to_string()),
        ]),
        sum.to_string(),
        closed.to_string(),
    ))
}

/// Convenience used all over the verifiers: the truncated sum of a series
/// with integer-1 lower parameters, reduced mod p^k.
pub(crate) fn pfq_unit_lower_mod(
    upper: Vec<Rational>,
    lower_count: usize,
    truncation: u64,
    pk: &PrimePower,
) -> Result<ResidueClass> {
    let spec = SeriesSpec::new(
        upper,
        vec![Rational::one(); lower_count],
        Rational::one(),
        truncation,
    )?;
    truncated_pfq_mod(&spec, pk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::reduce_mod;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rats(items: &[&str]) -> Vec<Rational> {
        items.iter().map(|s| rat(s)).collect()
    }

    fn spec(upper: &[&str], lower: &[&str], x: &str, n: u64) -> SeriesSpec {
        SeriesSpec::new(rats(upper), rats(lower), rat(x), n).unwrap()
    }

    #[test]
    fn truncation_must_be_positive() {
        assert_eq!(
            SeriesSpec::new(vec![], vec![], Rational::one(), 0),
            Err(Error::ZeroTruncation)
        );
    }

    #[test]
    fn series_term_examples() {
        let s = spec(&["2", "3", "-4"], &["1", "1"], "1", 7);
        assert_eq!(series_term(&s, 0).unwrap(), Rational::one());
        // (2)_3 (3)_3 (-4)_3 / ((1)_3^2 3!) = 24 * 60 * -24 / 216
        assert_eq!(series_term(&s, 3).unwrap(), rat("-160"));

        let s = spec(&["1/2", "1/2"], &["1"], "1", 2);
        assert_eq!(series_term(&s, 1).unwrap(), rat("1/4"));
    }

    #[test]
    fn series_term_past_termination_is_zero() {
        let s = spec(&["2", "3", "-4"], &["1", "1"], "1", 9);
        assert_eq!(series_term(&s, 5).unwrap(), Rational::zero());
        assert_eq!(series_term(&s, 8).unwrap(), Rational::zero());
    }

    #[test]
    fn zero_lower_pochhammer_is_reported() {
        // lower parameter -2 vanishes at factor index 2, i.e. within (−2)_3
        let s = spec(&["1", "1"], &["-2"], "1", 7);
        let err = truncated_pfq_exact(&s).unwrap_err();
        assert_eq!(
            err,
            Error::ZeroLowerPochhammer {
                parameter: "-2".to_string(),
                k: 3
            }
        );
        assert_eq!(series_term(&s, 3).unwrap_err(), err);
        // terms before the vanishing factor are fine
        assert!(series_term(&s, 2).is_ok());
    }

    #[test]
    fn upper_latch_wins_when_it_comes_first() {
        // upper -1 kills the series from k = 2 on; lower -3 would only
        // vanish inside (−3)_4, after the latch, so no error.
        let s = spec(&["-1", "1"], &["-3"], "1", 9);
        let total = truncated_pfq_exact(&s).unwrap();
        // 1 + (-1)(1)/(-3) * 1/1 = 1 + 1/3
        assert_eq!(total, rat("4/3"));
        assert_eq!(series_term(&s, 5).unwrap(), Rational::zero());
    }

    #[test]
    fn simultaneous_zero_is_still_an_error() {
        // both -2 factors vanish at the same step
        let s = spec(&["-2", "1"], &["-2"], "1", 9);
        assert!(matches!(
            truncated_pfq_exact(&s),
            Err(Error::ZeroLowerPochhammer { .. })
        ));
    }

    #[test]
    fn truncated_exact_examples() {
        let s = spec(&["1", "1", "-1"], &["1", "1"], "1", 7);
        assert_eq!(truncated_pfq_exact(&s).unwrap(), Rational::zero());

        let s = spec(&["9/7", "-13/5"], &["3/2"], "-2/3", 1);
        assert_eq!(truncated_pfq_exact(&s).unwrap(), Rational::one());

        // 1 - 24 + 108 - 160 + 75 + 0 + 0
        let s = spec(&["2", "3", "-4"], &["1", "1"], "1", 7);
        assert_eq!(truncated_pfq_exact(&s).unwrap(), Rational::zero());
    }

    #[test]
    fn truncated_mod_examples() {
        let pk = PrimePower::square(7).unwrap();
        let s = spec(&["2", "3", "-4"], &["1", "1"], "1", 7);
        assert!(truncated_pfq_mod(&s, &pk).unwrap().is_zero());

        // (0)_k kills every k >= 1
        let s = spec(&["1/2", "1/2", "0"], &["1", "1"], "1", 7);
        assert_eq!(
            truncated_pfq_mod(&s, &pk).unwrap().value(),
            &BigUint::from(1u32)
        );

        // Mortenson's first congruence at p = 5: residue is (-1/5) = +1
        let pk5 = PrimePower::square(5).unwrap();
        let s = spec(&["1/2", "1/2"], &["1"], "1", 5);
        assert_eq!(
            truncated_pfq_mod(&s, &pk5).unwrap().value(),
            &BigUint::from(1u32)
        );
    }

    #[test]
    fn mod_agrees_with_exact_reduction() {
        let pk = PrimePower::square(7).unwrap();
        for s in [
            spec(&["1/2", "3", "-9/2"], &["1", "1"], "1", 7),
            spec(&["2/3", "-1/3"], &["1"], "1", 7),
            spec(&["5", "-4", "1/2"], &["1", "1/2"], "-1", 6),
            spec(&["3/4"], &[], "2", 5),
        ] {
            let exact = truncated_pfq_exact(&s).unwrap();
            let reduced = reduce_mod(&exact, &pk).unwrap();
            assert_eq!(truncated_pfq_mod(&s, &pk).unwrap(), reduced, "spec {s}");
        }
    }

    #[test]
    fn mod_reports_non_integral_terms() {
        // 2F1[1,1;2|1] at p = 5: term k = 4 is 1/5
        let s = spec(&["1", "1"], &["2"], "1", 5);
        let pk = PrimePower::square(5).unwrap();
        assert_eq!(
            truncated_pfq_mod(&s, &pk),
            Err(Error::NonIntegralTerm { k: 4, prime: 5 })
        );
    }

    #[test]
    fn mod_rejects_non_p_integral_parameters() {
        let pk = PrimePower::square(5).unwrap();
        let s = spec(&["1/5"], &["1"], "1", 3);
        assert!(matches!(
            truncated_pfq_mod(&s, &pk),
            Err(Error::NotPIntegral { .. })
        ));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for text in [
            "pFq[1/2,1/2;1;1;7]",
            "pFq[2,3,-4;1,1;1;7]",
            "pFq[;;-1/2;3]",
            "pFq[-3;;5/6;12]",
        ] {
            let s: SeriesSpec = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        for bad in [
            "",
            "pFq[1;1;1]",
            "pFq[1;1;1;0]",
            "pFq[1,;1;1;2]",
            "pFq[1;1;1;2",
            "3F2[1;1;1;2]",
            "pFq[1;1;x;2]",
        ] {
            assert!(bad.parse::<SeriesSpec>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn saalschutz_closed_form_examples() {
        // (1)_1 (1)_1 / ((3)_1 (-1)_1)
        assert_eq!(
            saalschutz_closed_form(&rat("2"), &rat("2"), &rat("-1"), &rat("3")).unwrap(),
            rat("-1/3")
        );
        assert_eq!(
            saalschutz_closed_form(&rat("9/4"), &rat("-6"), &rat("0"), &rat("1/3")).unwrap(),
            Rational::one()
        );
        assert_eq!(
            saalschutz_closed_form(&rat("1"), &rat("2"), &rat("-1"), &rat("3")).unwrap_err(),
            Error::ZeroDenominatorPochhammer {
                base: "0".to_string(),
                len: 1
            }
        );
        assert_eq!(
            saalschutz_closed_form(&rat("1"), &rat("2"), &rat("-1/2"), &rat("3")).unwrap_err(),
            Error::NonTerminatingParameter("-1/2".to_string())
        );
    }

    #[test]
    fn saalschutz_verification_examples() {
        let report = verify_saalschutz(&rat("2"), &rat("2"), &rat("-1"), &rat("3")).unwrap();
        assert!(report.is_pass());
        assert_eq!(report.computed, "-1/3");
        assert_eq!(report.expected, "-1/3");

        let report = verify_saalschutz(&rat("4"), &rat("-7/5"), &rat("0"), &rat("2/3")).unwrap();
        assert!(report.is_pass());
        assert_eq!(report.computed, "1");

        let report = verify_saalschutz(&rat("1/2"), &rat("1/3"), &rat("-2"), &rat("5/2")).unwrap();
        assert!(report.is_pass());
    }

    #[test]
    fn small_and_general_mod_paths_agree() {
        let specs = [
            spec(&["2", "3", "-4"], &["1", "1"], "1", 7),
            spec(&["1/2", "3", "-9/2"], &["1", "1"], "1", 7),
            spec(&["5", "-4", "1/2"], &["1", "1/2"], "-1", 6),
            spec(&["3/4"], &[], "2", 5),
            spec(&["1/2", "1/2"], &["1"], "1", 13),
            spec(&["10", "14/3"], &["8/3"], "-5", 12),
            spec(&["0"], &["1"], "1", 4),
            spec(&["1", "1"], &["3"], "1", 9),
            // a later lower-parameter zero outranks an earlier
            // non-integral term, on both paths
            spec(&["1", "1"], &["3", "-6"], "1", 9),
        ];
        for (prime, exponent) in [(5u64, 1u32), (5, 2), (7, 2), (11, 3)] {
            let pk = PrimePower::new(prime, exponent).unwrap();
            for s in &specs {
                let small = truncated_pfq_mod_small(s, &pk).expect("fits machine words");
                let general = truncated_pfq_mod_general(s, &pk);
                assert_eq!(small, general, "spec {s} mod {pk}");
            }
        }
    }

    #[test]
    fn general_path_handles_huge_parameters() {
        // numerator far beyond i64 forces the bignum path
        let huge = Rational::new(BigInt::from(3).pow(60), BigInt::from(7)).unwrap();
        let s = SeriesSpec::new(
            vec![huge, rat("1/2")],
            vec![Rational::one()],
            Rational::one(),
            5,
        )
        .unwrap();
        let pk = PrimePower::square(11).unwrap();
        assert!(truncated_pfq_mod_small(&s, &pk).is_none());
        let direct = truncated_pfq_mod(&s, &pk).unwrap();
        let reduced = reduce_mod(&truncated_pfq_exact(&s).unwrap(), &pk).unwrap();
        assert_eq!(direct, reduced);
    }

    #[test]
    fn batch_inverse_matches_single_inversions() {
        let m = BigUint::from(121u32);
        let values: Vec<BigUint> = [3u32, 7, 100, 13, 1].map(BigUint::from).to_vec();
        let batched = batch_inverse(values.iter().cloned(), &m).unwrap();
        for (v, inv) in values.iter().zip(&batched) {
            assert_eq!((v * inv) % &m, BigUint::one());
        }
    }
}
