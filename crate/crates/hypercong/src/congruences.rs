//! One verifier per congruence or identity: the 3F2 vanishing congruence and
//! its alternating-binomial form, Mortenson's and Sun's 2F1 congruences, and
//! each exact identity or mod-p reduction used to tie them together.
//!
//! Verifiers never signal a violated hypothesis through `Err` or
//! `pass = false`: hypothesis violations produce a not-applicable report, so
//! a scan can distinguish "nothing is claimed here" from "the claim failed
//! here". Errors are kept for inputs outside a verifier's domain, such as a
//! composite modulus.
//!
//! Congruence checks compare residue classes; identity checks compare exact
//! rationals. There are no tolerances anywhere.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{batch_inverse, pfq_unit_lower_mod, split_unit};
use crate::padic::{
    is_p_integral, least_nonneg_residue_unchecked, legendre, PrimePower, ResidueClass,
};
use crate::rational::{binomial_general, binomial_uint, Rational};
use crate::report::{inputs_from, CheckReport};

fn residue_compare(
    check: &str,
    inputs: std::collections::BTreeMap<String, String>,
    computed: &ResidueClass,
    expected: &ResidueClass,
) -> CheckReport {
    CheckReport::compare(check, inputs, computed.to_string(), expected.to_string())
}

/// Lift a Legendre symbol into the residue ring: +1 -> 1, -1 -> m-1, 0 -> 0.
fn lift_symbol(symbol: i8, pk: &PrimePower) -> ResidueClass {
    let m = pk.modulus().clone();
    match symbol {
        1 => ResidueClass::new(BigUint::one(), m),
        -1 => ResidueClass::new(pk.modulus() - BigUint::one(), m),
        _ => ResidueClass::zero(m),
    }
}

/// C(x, 0), C(x, 1), ..., C(x, max_k) computed by the falling-factor ratio.
fn binomial_row(x: &Rational, max_k: u64) -> Vec<Rational> {
    let mut row = Vec::with_capacity(max_k as usize + 1);
    let mut value = Rational::one();
    row.push(value.clone());
    for k in 0..max_k {
        value = value * (x - Rational::from(k)) / Rational::from(k + 1);
        row.push(value.clone());
    }
    row
}

/// The exact alternating binomial sum
/// `sum_{k=0}^{terms-1} (-1)^k C(a,k) C(b,k) C(c,k)`.
fn alternating_binomial_sum(a: &Rational, b: &Rational, c: &Rational, terms: u64) -> Rational {
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for k in 0..terms.saturating_sub(1) {
        let shift = Rational::from(k);
        let factors = [a - &shift, b - &shift, c - &shift];
        if factors.iter().any(Rational::is_zero) {
            break;
        }
        let numerator = -(&factors[0] * &factors[1]) * &factors[2];
        term = term * numerator / Rational::from(k + 1).pow(3);
        sum = sum + &term;
    }
    sum
}

/// The alternating binomial sum
/// `sum_{k=0}^{p-1} (-1)^k C(a,k) C(b,k) C(-1-a-b,k)` reduced term-wise in
/// the residue ring. This is a falling-factor route, independent of the
/// rising-factorial series engine.
pub fn alternating_binomial_sum_mod(
    a: &Rational,
    b: &Rational,
    pk: &PrimePower,
) -> Result<ResidueClass> {
    let p = pk.prime();
    for (name, r) in [("a", a), ("b", b)] {
        if !is_p_integral(r, p) {
            return Err(Error::NotPIntegral {
                value: format!("{name} = {r}"),
                prime: p,
            });
        }
    }
    let c = -(Rational::one() + a + b);
    let params = [a.clone(), b.clone(), c];
    if let Some(residue) = alt_sum_mod_small(&params, pk) {
        return Ok(residue);
    }
    alt_sum_mod_general(&params, pk)
}

/// Machine-word route for the alternating sum; `None` when anything is too
/// wide. The ratio from term k to k+1 is `-(a-k)(b-k)(c-k) / (k+1)^3`, so a
/// vanishing factor terminates the sum and there is no error case left: the
/// denominators (k+1) stay below p and the parameter denominators are
/// coprime to p, hence every term is p-integral.
fn alt_sum_mod_small(params: &[Rational; 3], pk: &PrimePower) -> Option<ResidueClass> {
    use crate::padic::{inv_mod_u64, mulmod_u64};

    let m = pk.modulus().to_u64()?;
    let p = pk.prime();
    let mut small = [(0i64, 0i64); 3];
    for (slot, param) in small.iter_mut().zip(params) {
        let num = param.numer().to_i64()?;
        let den = param.denom().to_i64()?;
        let reach = num.unsigned_abs() as i128 + p as i128 * den as i128;
        if reach >= i64::MAX as i128 {
            return None;
        }
        *slot = (num, den);
    }

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

    let exponent = pk.exponent() as i64;
    let mut acc = 1u64 % m; // term 0
    let mut unit = 1u64;
    let mut valuation = 0i64;
    'terms: for k in 0..p - 1 {
        let mut numerator = 1u64;
        let mut denominator = 1u64;
        let mut delta = 0i64;
        let mut negative = true; // the (-1) in the ratio
        for &(num, den) in &small {
            let f = num - k as i64 * den;
            if f == 0 {
                break 'terms;
            }
            let (u, v, neg) = split(f);
            numerator = mulmod_u64(numerator, u, m);
            delta += v;
            negative ^= neg;
            denominator = mulmod_u64(denominator, den as u64 % m, m);
        }
        let (u, v, _) = split(k as i64 + 1);
        for _ in 0..3 {
            denominator = mulmod_u64(denominator, u, m);
        }
        delta -= 3 * v;

        let inverse = inv_mod_u64(denominator, m).expect("denominator unit is coprime to p");
        unit = mulmod_u64(unit, mulmod_u64(numerator, inverse, m), m);
        if negative {
            unit = m - unit;
        }
        valuation += delta;
        debug_assert!(
            valuation >= 0,
            "terms of the alternating sum are p-integral"
        );
        if valuation < exponent {
            let mut scale = 1u64;
            for _ in 0..valuation {
                scale *= p;
            }
            acc = (acc + mulmod_u64(unit, scale, m)) % m;
        }
    }
    Some(ResidueClass::new(acc.into(), pk.modulus().clone()))
}

fn alt_sum_mod_general(params: &[Rational; 3], pk: &PrimePower) -> Result<ResidueClass> {
    let p = pk.prime();
    let p_int = BigInt::from(p);
    let m_int = BigInt::from(pk.modulus().clone());
    let m = pk.modulus();

    // ratio from term k to k+1: -(a-k)(b-k)(c-k) / (k+1)^3
    struct Step {
        numerator_unit: BigUint,
        denominator_unit: BigUint,
        valuation_delta: i64,
    }
    let mut steps: Vec<Step> = Vec::new();
    'collect: for k in 0..p - 1 {
        let k_int = BigInt::from(k);
        let mut numerator = -BigInt::one();
        let mut denominator = BigInt::from(k + 1).pow(3);
        for param in params {
            let factor_num = param.numer() - &k_int * param.denom();
            if factor_num.is_zero() {
                break 'collect;
            }
            numerator *= factor_num;
            denominator *= param.denom();
        }
        let (numerator_unit, nv) = split_unit(&numerator, &p_int, &m_int);
        let (denominator_unit, dv) = split_unit(&denominator, &p_int, &m_int);
        steps.push(Step {
            numerator_unit,
            denominator_unit,
            valuation_delta: nv - dv,
        });
    }

    let inverses = batch_inverse(steps.iter().map(|s| s.denominator_unit.clone()), m)?;

    let exponent = pk.exponent() as i64;
    let mut acc = BigUint::one(); // term 0
    let mut unit = BigUint::one();
    let mut valuation = 0i64;
    for (idx, step) in steps.iter().enumerate() {
        unit = unit * &step.numerator_unit % m;
        unit = unit * &inverses[idx] % m;
        valuation += step.valuation_delta;
        if valuation < 0 {
            return Err(Error::NonIntegralTerm {
                k: idx as u64 + 1,
                prime: p,
            });
        }
        if valuation < exponent {
            let scale = BigUint::from(p).pow(valuation as u32);
            acc = (acc + &unit * scale) % m;
        }
    }
    Ok(ResidueClass::new(acc, m.clone()))
}

/// The truncated 3F2[alpha, beta, 1-alpha-beta; 1, 1 | 1]_p congruence: under
/// the hypothesis `{alpha}_p, {beta}_p >= 1` and `{alpha}_p + {beta}_p <= p`
/// the sum vanishes mod p^2.
pub fn verify_main_theorem(alpha: &Rational, beta: &Rational, p: u64) -> Result<CheckReport> {
    verify_main_theorem_exp(alpha, beta, p, 2)
}

/// Same check against an arbitrary modulus exponent. The congruence is only
/// claimed at exponent 2; other exponents are exploration knobs for scans.
pub fn verify_main_theorem_exp(
    alpha: &Rational,
    beta: &Rational,
    p: u64,
    exponent: u32,
) -> Result<CheckReport> {
    let pk = PrimePower::new(p, exponent)?;
    let inputs = inputs_from(&[
        ("alpha", alpha.to_string()),
        ("beta", beta.to_string()),
        ("p", p.to_string()),
    ]);
    let expected = ResidueClass::zero(pk.modulus().clone());

    let na = |reason: String| {
        CheckReport::not_applicable("theorem", inputs.clone(), &reason, expected.to_string())
    };
    if !is_p_integral(alpha, p) {
        return Ok(na(format!("alpha = {alpha} is not {p}-integral")));
    }
    if !is_p_integral(beta, p) {
        return Ok(na(format!("beta = {beta} is not {p}-integral")));
    }
    let ra = least_nonneg_residue_unchecked(alpha, p).expect("checked p-integral");
    let rb = least_nonneg_residue_unchecked(beta, p).expect("checked p-integral");
    if ra < 1 {
        return Ok(na(format!("{{alpha}}_{p} = 0")));
    }
    if rb < 1 {
        return Ok(na(format!("{{beta}}_{p} = 0")));
    }
    if ra + rb > p {
        return Ok(na(format!(
            "{{alpha}}_{p} + {{beta}}_{p} = {} > {p}",
            ra + rb
        )));
    }

    let third = Rational::one() - alpha - beta;
    let computed = pfq_unit_lower_mod(vec![alpha.clone(), beta.clone(), third], 2, p, &pk)
        .expect("theorem series terms are p-integral");
    Ok(residue_compare("theorem", inputs, &computed, &expected))
}

/// The equivalent binomial form: for p-integral a, b with
/// `{a}_p + {b}_p >= p`,
/// `sum_{k=0}^{p-1} (-1)^k C(a,k) C(b,k) C(-1-a-b,k) = 0 (mod p^2)`.
pub fn verify_alt_form(a: &Rational, b: &Rational, p: u64) -> Result<CheckReport> {
    verify_alt_form_exp(a, b, p, 2)
}

pub fn verify_alt_form_exp(
    a: &Rational,
    b: &Rational,
    p: u64,
    exponent: u32,
) -> Result<CheckReport> {
    let pk = PrimePower::new(p, exponent)?;
    let inputs = inputs_from(&[
        ("a", a.to_string()),
        ("b", b.to_string()),
        ("p", p.to_string()),
    ]);
    let expected = ResidueClass::zero(pk.modulus().clone());

    let na = |reason: String| {
        CheckReport::not_applicable("alt_form", inputs.clone(), &reason, expected.to_string())
    };
    if !is_p_integral(a, p) {
        return Ok(na(format!("a = {a} is not {p}-integral")));
    }
    if !is_p_integral(b, p) {
        return Ok(na(format!("b = {b} is not {p}-integral")));
    }
    let ra = least_nonneg_residue_unchecked(a, p).expect("checked p-integral");
    let rb = least_nonneg_residue_unchecked(b, p).expect("checked p-integral");
    if ra + rb < p {
        return Ok(na(format!("{{a}}_{p} + {{b}}_{p} = {} < {p}", ra + rb)));
    }

    let computed = alternating_binomial_sum_mod(a, b, &pk).expect("alt-form terms are p-integral");
    Ok(residue_compare("alt_form", inputs, &computed, &expected))
}

/// Exact identity: for positive integers a, b,
/// `sum_{k=0}^{a} (-a)_k (-b)_k (1+a+b)_k / (k!)^3 = C(a+b, a)^2`.
pub fn binomial_square_identity(a: u64, b: u64) -> CheckReport {
    let inputs = inputs_from(&[("a", a.to_string()), ("b", b.to_string())]);
    let rhs = {
        let c = binomial_uint(a + b, a);
        Rational::from_integer(BigInt::from(&c * &c))
    };
    if a < 1 || b < 1 {
        return CheckReport::not_applicable(
            "binomial_square",
            inputs,
            "a and b must be positive",
            rhs.to_string(),
        );
    }
    // the sum is the alternating binomial form with integer arguments
    let lhs = alternating_binomial_sum(
        &Rational::from(a),
        &Rational::from(b),
        &-(Rational::one() + Rational::from(a) + Rational::from(b)),
        a + 1,
    );
    CheckReport::compare("binomial_square", inputs, lhs.to_string(), rhs.to_string())
}

/// The binomial shift expansion mod p^2: for 0 <= alpha, k <= p-1 and any
/// integer s,
/// `C(alpha + s p, k) = C(alpha, k) + s p sum_{j=1}^{k} C(alpha, k-j) (-1)^{j-1} / j (mod p^2)`.
pub fn verify_shift_congruence(alpha: u64, k: u64, s: i64, p: u64) -> Result<CheckReport> {
    let pk = PrimePower::square(p)?;
    let inputs = inputs_from(&[
        ("alpha", alpha.to_string()),
        ("k", k.to_string()),
        ("p", p.to_string()),
        ("s", s.to_string()),
    ]);
    if alpha > p - 1 || k > p - 1 {
        return Ok(CheckReport::not_applicable(
            "shift_congruence",
            inputs,
            "alpha and k must lie in [0, p-1]",
            "-".to_string(),
        ));
    }

    let shifted = BigInt::from(alpha) + BigInt::from(s) * BigInt::from(p);
    let lhs = binomial_general(&Rational::from_integer(shifted), k);

    let alpha_rat = Rational::from(alpha);
    let row = binomial_row(&alpha_rat, k);
    let mut correction = Rational::zero();
    for j in 1..=k {
        let sign = if j % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        correction = correction + row[(k - j) as usize].clone() * sign / Rational::from(j);
    }
    let sp = Rational::from_integer(BigInt::from(s) * BigInt::from(p));
    let rhs = row[k as usize].clone() + sp * correction;

    let computed = crate::padic::reduce_mod(&lhs, &pk).expect("integer binomial");
    let expected = crate::padic::reduce_mod(&rhs, &pk).expect("denominators below p");
    Ok(residue_compare(
        "shift_congruence",
        inputs,
        &computed,
        &expected,
    ))
}

/// Shift invariance of the alternating binomial sum mod p^2: for
/// 0 <= alpha, beta <= p-1 with alpha + beta >= p and any integer s, the sum
/// with (beta) and the sum with (beta + s p) agree mod p^2.
pub fn verify_shift_invariance(alpha: u64, beta: u64, s: i64, p: u64) -> Result<CheckReport> {
    let pk = PrimePower::square(p)?;
    let inputs = inputs_from(&[
        ("alpha", alpha.to_string()),
        ("beta", beta.to_string()),
        ("p", p.to_string()),
        ("s", s.to_string()),
    ]);
    let na = |reason: &str| {
        CheckReport::not_applicable("shift_invariance", inputs.clone(), reason, "-".to_string())
    };
    if alpha > p - 1 || beta > p - 1 {
        return Ok(na("alpha and beta must lie in [0, p-1]"));
    }
    if alpha + beta < p {
        return Ok(na("alpha + beta must be at least p"));
    }

    let a = Rational::from(alpha);
    let b = Rational::from(beta);
    let b_shifted = &b + Rational::from_integer(BigInt::from(s) * BigInt::from(p));
    let c = |bb: &Rational| -(Rational::one() + &a + bb);

    let base = alternating_binomial_sum(&a, &b, &c(&b), p);
    let shifted = alternating_binomial_sum(&a, &b_shifted, &c(&b_shifted), p);

    let computed = crate::padic::reduce_mod(&shifted, &pk).expect("integer sum");
    let expected = crate::padic::reduce_mod(&base, &pk).expect("integer sum");
    Ok(residue_compare(
        "shift_invariance",
        inputs,
        &computed,
        &expected,
    ))
}

/// Exact double-sum transformation: for positive integers a, b,
///
/// ```text
/// sum_{j=1}^{a} (1/j) sum_{k=j}^{a} (-1)^{k-j} C(a,k) C(-1-a-b,k) C(b,k-j)
///   = sum_{j=1}^{a} ((-1)^b / j) C(-a-1, j+b) C(a+b, j+b)
/// ```
pub fn double_sum_swap(a: u64, b: u64) -> CheckReport {
    let inputs = inputs_from(&[("a", a.to_string()), ("b", b.to_string())]);
    if a < 1 || b < 1 {
        return CheckReport::not_applicable(
            "double_sum_swap",
            inputs,
            "a and b must be positive",
            "-".to_string(),
        );
    }

    let row_a = binomial_row(&Rational::from(a), a);
    let row_c = binomial_row(
        &-(Rational::one() + Rational::from(a) + Rational::from(b)),
        a,
    );
    let row_b = binomial_row(&Rational::from(b), a);

    let mut lhs = Rational::zero();
    for j in 1..=a {
        let mut inner = Rational::zero();
        for k in j..=a {
            let sign = if (k - j) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            inner =
                inner + sign * &row_a[k as usize] * &row_c[k as usize] * &row_b[(k - j) as usize];
        }
        lhs = lhs + inner / Rational::from(j);
    }

    let neg_a1 = binomial_row(&-(Rational::one() + Rational::from(a)), a + b);
    let row_ab = binomial_row(&Rational::from(a + b), a + b);
    let sign_b = if b.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let mut rhs = Rational::zero();
    for j in 1..=a {
        rhs = rhs
            + &sign_b * &neg_a1[(j + b) as usize] * &row_ab[(j + b) as usize] / Rational::from(j);
    }

    CheckReport::compare("double_sum_swap", inputs, lhs.to_string(), rhs.to_string())
}

/// Wraparound of the tail sum mod p: for 1 <= a, b <= p-1 with a + b >= p,
///
/// ```text
/// sum_{j=b+1}^{a+b} ((-1)^b/(j-b)) C(-a-1,j) C(a+b,j)
///   = - sum_{j=0}^{a-(p-b)} ((-1)^b/(j+p-b)) C(-a-1,j) C(a-(p-b),j)  (mod p)
/// ```
///
/// Only indices j >= p survive on the left (C(a+b, j) vanishes mod p for
/// b < j < p), and shifting j by p sends C(a+b, j) to C(a+b-p, j-p) while
/// C(-a-1, j) picks up a factor of -1, since
/// `C(-a-1, j) = -C(-a-1, j-p) (mod p)` for odd p. The wrapped sum therefore
/// comes back negated.
pub fn wraparound_reduction(a: u64, b: u64, p: u64) -> Result<CheckReport> {
    let pk = PrimePower::new(p, 1)?;
    let inputs = inputs_from(&[
        ("a", a.to_string()),
        ("b", b.to_string()),
        ("p", p.to_string()),
    ]);
    let na = |reason: &str| {
        CheckReport::not_applicable("wraparound", inputs.clone(), reason, "-".to_string())
    };
    if a < 1 || b < 1 || a > p - 1 || b > p - 1 {
        return Ok(na("a and b must lie in [1, p-1]"));
    }
    if a + b < p {
        return Ok(na("a + b must be at least p"));
    }

    let sign_b = if b.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };

    let neg_a1 = binomial_row(&-(Rational::one() + Rational::from(a)), a + b);
    let row_ab = binomial_row(&Rational::from(a + b), a + b);
    let mut lhs = Rational::zero();
    for j in b + 1..=a + b {
        lhs = lhs + &sign_b * &neg_a1[j as usize] * &row_ab[j as usize] / Rational::from(j - b);
    }

    let wrapped = a - (p - b);
    let row_w = binomial_row(&Rational::from(wrapped), wrapped);
    let mut rhs = Rational::zero();
    for j in 0..=wrapped {
        rhs = rhs + &sign_b * &neg_a1[j as usize] * &row_w[j as usize] / Rational::from(j + p - b);
    }

    let computed = crate::padic::reduce_mod(&lhs, &pk).expect("denominators below p");
    let expected = crate::padic::reduce_mod(&-rhs, &pk).expect("denominators below p");
    Ok(residue_compare("wraparound", inputs, &computed, &expected))
}

/// Exact reflection identity: for integers a >= b >= 1,
///
/// ```text
/// sum_{j=0}^{a-b} (1/(j+b)) C(-a-1,j) C(a-b,j)
///   = sum_{j=0}^{b-1} ((-1)^{1+a}/(j+1+a-b)) C(-a-1,j) C(b-1,j)
/// ```
pub fn reflection_identity(a: u64, b: u64) -> CheckReport {
    let inputs = inputs_from(&[("a", a.to_string()), ("b", b.to_string())]);
    if b < 1 || a < b {
        return CheckReport::not_applicable(
            "reflection",
            inputs,
            "needs a >= b >= 1",
            "-".to_string(),
        );
    }

    let neg_a1 = binomial_row(&-(Rational::one() + Rational::from(a)), a);
    let row_ab = binomial_row(&Rational::from(a - b), a - b);
    let mut lhs = Rational::zero();
    for j in 0..=a - b {
        lhs = lhs + &neg_a1[j as usize] * &row_ab[j as usize] / Rational::from(j + b);
    }

    let sign = if (1 + a).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let row_b1 = binomial_row(&Rational::from(b - 1), b - 1);
    let mut rhs = Rational::zero();
    for j in 0..b {
        rhs =
            rhs + &sign * &neg_a1[j as usize] * &row_b1[j as usize] / Rational::from(j + 1 + a - b);
    }

    CheckReport::compare("reflection", inputs, lhs.to_string(), rhs.to_string())
}

/// Exact single-term split: for alpha != 0 and j+1+alpha-beta != 0,
///
/// ```text
/// (1/(j+1+alpha-beta)) C(-alpha-1,j) C(beta-1,j)
///   = ((alpha+beta-1)/alpha^2) C(-alpha,j) C(beta-1,j)
///     + ((beta-1)^2/alpha^2) (1/(j+1+alpha-beta)) C(-alpha,j) C(beta-2,j)
/// ```
pub fn term_split_identity(alpha: &Rational, beta: &Rational, j: u64) -> CheckReport {
    let inputs = inputs_from(&[
        ("alpha", alpha.to_string()),
        ("beta", beta.to_string()),
        ("j", j.to_string()),
    ]);
    let denom = Rational::from(j + 1) + alpha - beta;
    if alpha.is_zero() {
        return CheckReport::not_applicable("term_split", inputs, "alpha = 0", "-".to_string());
    }
    if denom.is_zero() {
        return CheckReport::not_applicable(
            "term_split",
            inputs,
            "pole: j+1+alpha-beta = 0",
            "-".to_string(),
        );
    }

    let one = Rational::one();
    let beta1 = beta - &one;
    let lhs = binomial_general(&-(alpha + &one), j) * binomial_general(&beta1, j) / &denom;

    let alpha_sq = alpha * alpha;
    let first = (alpha + beta - &one) / &alpha_sq
        * binomial_general(&-alpha.clone(), j)
        * binomial_general(&beta1, j);
    let second = (&beta1 * &beta1) / alpha_sq / denom
        * binomial_general(&-alpha.clone(), j)
        * binomial_general(&(beta - Rational::from(2u64)), j);
    let rhs = first + second;

    CheckReport::compare("term_split", inputs, lhs.to_string(), rhs.to_string())
}

/// Exact recurrence obtained by summing the term split: for integers
/// a >= b >= 2,
///
/// ```text
/// sum_{j=0}^{b-1} (1/(j+1+a-b)) C(-a-1,j) C(b-1,j)
///   = C(b-1-a, b-1) (a+b-1)/a^2
///     + ((b-1)^2/a^2) sum_{j=0}^{b-2} (1/(j+1+a-b)) C(-a,j) C(b-2,j)
/// ```
pub fn split_recurrence(a: u64, b: u64) -> CheckReport {
    let inputs = inputs_from(&[("a", a.to_string()), ("b", b.to_string())]);
    if b < 2 || a < b {
        return CheckReport::not_applicable(
            "split_recurrence",
            inputs,
            "needs a >= b >= 2",
            "-".to_string(),
        );
    }

    let neg_a1 = binomial_row(&-(Rational::one() + Rational::from(a)), b - 1);
    let row_b1 = binomial_row(&Rational::from(b - 1), b - 1);
    let mut lhs = Rational::zero();
    for j in 0..b {
        lhs = lhs + &neg_a1[j as usize] * &row_b1[j as usize] / Rational::from(j + 1 + a - b);
    }

    let a_sq = Rational::from(a).pow(2);
    let head = binomial_general(&(Rational::from(b - 1) - Rational::from(a)), b - 1)
        * Rational::from(a + b - 1)
        / &a_sq;

    let neg_a = binomial_row(&-Rational::from(a), b.saturating_sub(2));
    let row_b2 = binomial_row(&Rational::from(b - 2), b - 2);
    let mut tail = Rational::zero();
    for j in 0..b - 1 {
        tail = tail + &neg_a[j as usize] * &row_b2[j as usize] / Rational::from(j + 1 + a - b);
    }
    let b1 = Rational::from(b - 1);
    let rhs = head + (&b1 * &b1) / a_sq * tail;

    CheckReport::compare("split_recurrence", inputs, lhs.to_string(), rhs.to_string())
}

/// Exact closed-form evaluation of the combined sum: with all poles avoided
/// (j+alpha-n-1 != 0 and j+alpha-n != 0 for 0 <= j <= n),
///
/// ```text
/// sum_{j=0}^{n} C(n,j) [ ((alpha-n-1)^2/(j+alpha-n-1)) C(-alpha,j)
///                        + (alpha^2/(j+alpha-n)) C(-alpha-1,j) ]
///   = (-1)^n (2 alpha - n - 1) C(alpha-1, n)
/// ```
pub fn closed_sum_identity(n: u64, alpha: &Rational) -> CheckReport {
    let inputs = inputs_from(&[("alpha", alpha.to_string()), ("n", n.to_string())]);
    let n_rat = Rational::from(n);
    for j in 0..=n {
        let j_rat = Rational::from(j);
        if (&j_rat + alpha - &n_rat - Rational::one()).is_zero()
            || (&j_rat + alpha - &n_rat).is_zero()
        {
            return CheckReport::not_applicable(
                "closed_sum",
                inputs,
                &format!("pole at j = {j}"),
                "-".to_string(),
            );
        }
    }

    let one = Rational::one();
    let weight_a = (alpha - &n_rat - &one).pow(2);
    let weight_b = alpha.pow(2);
    let neg_a = binomial_row(&-alpha.clone(), n);
    let neg_a1 = binomial_row(&-(alpha + &one), n);
    let row_n = binomial_row(&n_rat, n);

    let mut lhs = Rational::zero();
    for j in 0..=n {
        let j_rat = Rational::from(j);
        let first = &weight_a / (&j_rat + alpha - &n_rat - &one) * &neg_a[j as usize];
        let second = &weight_b / (&j_rat + alpha - &n_rat) * &neg_a1[j as usize];
        lhs = lhs + &row_n[j as usize] * (first + second);
    }

    let sign = if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let rhs = sign
        * (Rational::from(2u64) * alpha - n_rat - one.clone())
        * binomial_general(&(alpha - &one), n);

    CheckReport::compare("closed_sum", inputs, lhs.to_string(), rhs.to_string())
}

/// The two kernel double-sums agree mod p: for 1 <= a, b <= p-1 with
/// a + b >= p,
///
/// ```text
/// sum_{j=1}^{a} (1/j) sum_{k=j}^{a} (-1)^{k-j} C(a,k) C(-1-a-b,k) C(b,k-j)
///   = sum_{j=1}^{a} (1/j) sum_{k=j}^{a} (-1)^{k-j} C(a,k) C(b,k) C(-1-a-b,k-j)
///   (mod p)
/// ```
pub fn kernel_congruence(a: u64, b: u64, p: u64) -> Result<CheckReport> {
    let pk = PrimePower::new(p, 1)?;
    let inputs = inputs_from(&[
        ("a", a.to_string()),
        ("b", b.to_string()),
        ("p", p.to_string()),
    ]);
    let na = |reason: &str| {
        CheckReport::not_applicable("kernel", inputs.clone(), reason, "-".to_string())
    };
    if a < 1 || b < 1 || a > p - 1 || b > p - 1 {
        return Ok(na("a and b must lie in [1, p-1]"));
    }
    if a + b < p {
        return Ok(na("a + b must be at least p"));
    }

    let row_a = binomial_row(&Rational::from(a), a);
    let row_b = binomial_row(&Rational::from(b), a);
    let row_c = binomial_row(
        &-(Rational::one() + Rational::from(a) + Rational::from(b)),
        a,
    );

    let double_sum = |outer: &[Rational], inner: &[Rational]| -> Rational {
        let mut total = Rational::zero();
        for j in 1..=a {
            let mut sum = Rational::zero();
            for k in j..=a {
                let sign = if (k - j) % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                sum =
                    sum + sign * &row_a[k as usize] * &outer[k as usize] * &inner[(k - j) as usize];
            }
            total = total + sum / Rational::from(j);
        }
        total
    };

    let lhs = double_sum(&row_c, &row_b);
    let rhs = double_sum(&row_b, &row_c);

    let computed = crate::padic::reduce_mod(&lhs, &pk).expect("denominators below p");
    let expected = crate::padic::reduce_mod(&rhs, &pk).expect("denominators below p");
    Ok(residue_compare("kernel", inputs, &computed, &expected))
}

/// Mortenson's four 2F1 congruences mod p^2 for prime p >= 5:
///
/// ```text
/// 2F1[1/2,1/2;1|1]_p = (-1/p),  2F1[1/3,2/3;1|1]_p = (-3/p),
/// 2F1[1/4,3/4;1|1]_p = (-2/p),  2F1[1/6,5/6;1|1]_p = (-1/p)   (mod p^2)
/// ```
pub fn verify_mortenson(p: u64) -> Result<Vec<CheckReport>> {
    verify_mortenson_exp(p, 2)
}

pub fn verify_mortenson_exp(p: u64, exponent: u32) -> Result<Vec<CheckReport>> {
    if p < 5 {
        return Err(Error::PrimeBelowFive(p));
    }
    let pk = PrimePower::new(p, exponent)?;
    let cases: [(&str, &str, i64); 4] = [
        ("1/2", "1/2", -1),
        ("1/3", "2/3", -3),
        ("1/4", "3/4", -2),
        ("1/6", "5/6", -1),
    ];
    let mut reports = Vec::with_capacity(4);
    for (first, second, symbol_arg) in cases {
        let a: Rational = first.parse().expect("fixed parameter");
        let b: Rational = second.parse().expect("fixed parameter");
        let inputs = inputs_from(&[
            ("p", p.to_string()),
            ("series", format!("2F1[{first},{second};1|1]")),
            ("symbol", symbol_arg.to_string()),
        ]);
        let computed = pfq_unit_lower_mod(vec![a, b], 1, p, &pk)
            .expect("parameters are p-integral for p >= 5");
        let expected = lift_symbol(legendre(&BigInt::from(symbol_arg), p), &pk);
        reports.push(residue_compare("mortenson", inputs, &computed, &expected));
    }
    Ok(reports)
}

/// Sun's congruence mod p^2: for p-integral alpha with `{alpha}_p >= 1`,
/// `2F1[alpha, 1-alpha; 1 | 1]_p = (-1)^({alpha}_p - 1) (mod p^2)`.
pub fn verify_sun(alpha: &Rational, p: u64) -> Result<CheckReport> {
    verify_sun_exp(alpha, p, 2)
}

pub fn verify_sun_exp(alpha: &Rational, p: u64, exponent: u32) -> Result<CheckReport> {
    let pk = PrimePower::new(p, exponent)?;
    let inputs = inputs_from(&[("alpha", alpha.to_string()), ("p", p.to_string())]);
    let na = |reason: String, expected: String| {
        CheckReport::not_applicable("sun", inputs.clone(), &reason, expected)
    };
    if !is_p_integral(alpha, p) {
        return Ok(na(
            format!("alpha = {alpha} is not {p}-integral"),
            "-".to_string(),
        ));
    }
    let ra = least_nonneg_residue_unchecked(alpha, p).expect("checked p-integral");
    if ra < 1 {
        return Ok(na(format!("{{alpha}}_{p} = 0"), "-".to_string()));
    }

    let expected = lift_symbol(if (ra - 1).is_multiple_of(2) { 1 } else { -1 }, &pk);
    let computed = pfq_unit_lower_mod(vec![alpha.clone(), Rational::one() - alpha], 1, p, &pk)
        .expect("sun series terms are p-integral");
    Ok(residue_compare("sun", inputs, &computed, &expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn theorem_examples() {
        let r = verify_main_theorem(&rat("1"), &rat("1"), 7).unwrap();
        assert!(r.is_pass(), "{r:?}");
        assert_eq!(r.computed, "0 (mod 49)");

        let r = verify_main_theorem(&rat("2"), &rat("3"), 7).unwrap();
        assert!(r.is_pass());

        // boundary case {1/2}_7 + {3}_7 = 4 + 3 = 7
        let r = verify_main_theorem(&rat("1/2"), &rat("3"), 7).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "0 (mod 49)");
    }

    #[test]
    fn theorem_hypothesis_gating() {
        // {1/2}_p + {1/2}_p = p + 1: hypothesis violated, never a failure
        let r = verify_main_theorem(&rat("1/2"), &rat("1/2"), 7).unwrap();
        assert!(r.is_not_applicable());

        let r = verify_main_theorem(&rat("7"), &rat("1"), 7).unwrap();
        assert!(r.is_not_applicable());

        let r = verify_main_theorem(&rat("1/7"), &rat("1"), 7).unwrap();
        assert!(r.is_not_applicable());

        assert!(matches!(
            verify_main_theorem(&rat("1"), &rat("1"), 6),
            Err(Error::NotOddPrime(6))
        ));
    }

    #[test]
    fn alt_form_examples() {
        let r = verify_alt_form(&rat("4"), &rat("3"), 7).unwrap();
        assert!(r.is_pass(), "{r:?}");
        assert_eq!(r.computed, "0 (mod 49)");

        let r = verify_alt_form(&rat("-1/2"), &rat("-3"), 7).unwrap();
        assert!(r.is_pass());

        let r = verify_alt_form(&rat("6"), &rat("1"), 7).unwrap();
        assert!(r.is_pass());

        // {2}_7 + {3}_7 = 5 < 7
        let r = verify_alt_form(&rat("2"), &rat("3"), 7).unwrap();
        assert!(r.is_not_applicable());
    }

    #[test]
    fn alt_sum_paths_agree() {
        for (a, b) in [
            ("4", "3"),
            ("-1/2", "-3"),
            ("6", "1"),
            ("22/3", "-17/6"),
            ("1/2", "1/2"),
        ] {
            let a: Rational = a.parse().unwrap();
            let b: Rational = b.parse().unwrap();
            for (p, e) in [(5u64, 1u32), (7, 2), (11, 3)] {
                let pk = PrimePower::new(p, e).unwrap();
                let c = -(Rational::one() + &a + &b);
                let params = [a.clone(), b.clone(), c];
                let small = alt_sum_mod_small(&params, &pk).expect("fits machine words");
                let general = alt_sum_mod_general(&params, &pk).unwrap();
                assert_eq!(small, general, "(a,b)=({a},{b}) mod {}^{e}", p);
            }
        }
    }

    #[test]
    fn alt_form_matches_integer_binomial_square() {
        // for integer pairs the sum terminates and equals C(a+b,a)^2 exactly
        let pk = PrimePower::square(7).unwrap();
        for (a, b) in [(4u64, 3u64), (6, 1), (5, 4), (3, 6)] {
            let residue =
                alternating_binomial_sum_mod(&Rational::from(a), &Rational::from(b), &pk).unwrap();
            let square = binomial_uint(a + b, a).pow(2);
            assert_eq!(residue, ResidueClass::new(square, pk.modulus().clone()));
        }
    }

    #[test]
    fn binomial_square_examples() {
        let r = binomial_square_identity(1, 1);
        assert!(r.is_pass());
        assert_eq!(r.computed, "4");

        let r = binomial_square_identity(2, 3);
        assert!(r.is_pass());
        assert_eq!(r.computed, "100");

        let r = binomial_square_identity(4, 3);
        assert!(r.is_pass());
        assert_eq!(r.computed, "1225");

        assert!(binomial_square_identity(0, 3).is_not_applicable());
    }

    #[test]
    fn shift_congruence_examples() {
        let r = verify_shift_congruence(2, 1, 1, 5).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "7 (mod 25)");

        let r = verify_shift_congruence(3, 0, -2, 5).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "1 (mod 25)");

        let r = verify_shift_congruence(3, 2, -1, 7).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "10 (mod 49)");

        assert!(verify_shift_congruence(5, 1, 1, 5)
            .unwrap()
            .is_not_applicable());
    }

    #[test]
    fn shift_invariance_examples() {
        assert!(verify_shift_invariance(4, 3, 0, 7).unwrap().is_pass());
        assert!(verify_shift_invariance(4, 3, 1, 7).unwrap().is_pass());
        assert!(verify_shift_invariance(6, 6, -2, 7).unwrap().is_pass());
        assert!(verify_shift_invariance(2, 3, 1, 7)
            .unwrap()
            .is_not_applicable());
    }

    #[test]
    fn double_sum_swap_examples() {
        let r = double_sum_swap(1, 1);
        assert!(r.is_pass());
        assert_eq!(r.computed, "-3");

        let r = double_sum_swap(2, 1);
        assert!(r.is_pass());
        assert_eq!(r.computed, "-13");

        assert!(double_sum_swap(3, 2).is_pass());
        assert!(double_sum_swap(0, 2).is_not_applicable());
    }

    #[test]
    fn wraparound_examples() {
        let r = wraparound_reduction(4, 3, 7).unwrap();
        assert!(r.is_pass(), "{r:?}");
        assert_eq!(r.computed, "2 (mod 7)");

        assert!(wraparound_reduction(6, 6, 7).unwrap().is_pass());

        // b = p-1 leaves a single j = 0 term on the wrapped side
        assert!(wraparound_reduction(1, 4, 5).unwrap().is_pass());

        assert!(wraparound_reduction(1, 2, 7).unwrap().is_not_applicable());
    }

    #[test]
    fn reflection_examples() {
        let r = reflection_identity(2, 1);
        assert!(r.is_pass());
        assert_eq!(r.computed, "-1/2");

        // direct evaluation gives 1 on both sides for a = b = 1
        let r = reflection_identity(1, 1);
        assert!(r.is_pass());
        assert_eq!(r.computed, "1");
        assert_eq!(r.expected, "1");

        assert!(reflection_identity(5, 3).is_pass());
        assert!(reflection_identity(2, 3).is_not_applicable());
    }

    #[test]
    fn term_split_examples() {
        let r = term_split_identity(&rat("2"), &rat("2"), 0);
        assert!(r.is_pass());
        assert_eq!(r.computed, "1");

        let r = term_split_identity(&rat("3"), &rat("2"), 1);
        assert!(r.is_pass());
        assert_eq!(r.computed, "-4/3");

        assert!(term_split_identity(&rat("5/2"), &rat("3/2"), 2).is_pass());

        assert!(term_split_identity(&rat("0"), &rat("2"), 1).is_not_applicable());
        // j+1+alpha-beta = 0
        assert!(term_split_identity(&rat("1"), &rat("3"), 1).is_not_applicable());
    }

    #[test]
    fn split_recurrence_examples() {
        let r = split_recurrence(2, 2);
        assert!(r.is_pass());
        assert_eq!(r.computed, "-1/2");

        assert!(split_recurrence(4, 2).is_pass());
        assert!(split_recurrence(5, 4).is_pass());
        assert!(split_recurrence(3, 1).is_not_applicable());
    }

    #[test]
    fn term_splits_sum_to_the_recurrence() {
        // summing the term-level split over j in [0, b-1] must reproduce
        // the recurrence exactly
        for (a, b) in [(2u64, 2u64), (5, 3), (7, 7), (9, 4)] {
            let alpha = Rational::from(a);
            let beta = Rational::from(b);
            let mut lhs_sum = Rational::zero();
            for j in 0..b {
                let split = term_split_identity(&alpha, &beta, j);
                assert!(split.is_pass(), "{split:?}");
                let lhs: Rational = split.computed.parse().unwrap();
                lhs_sum = lhs_sum + lhs;
            }
            let recurrence = split_recurrence(a, b);
            assert!(recurrence.is_pass(), "{recurrence:?}");
            assert_eq!(lhs_sum.to_string(), recurrence.computed, "(a,b)=({a},{b})");
        }
    }

    #[test]
    fn closed_sum_examples() {
        // n = 0 collapses to 2 alpha - 1 on both sides
        let r = closed_sum_identity(0, &rat("5/3"));
        assert!(r.is_pass());
        assert_eq!(r.computed, "7/3");

        let r = closed_sum_identity(1, &rat("3"));
        assert!(r.is_pass());
        assert_eq!(r.computed, "-8");

        assert!(closed_sum_identity(4, &rat("7/2")).is_pass());

        // alpha = 2 hits a pole for n = 4
        assert!(closed_sum_identity(4, &rat("2")).is_not_applicable());
    }

    #[test]
    fn kernel_examples() {
        let r = kernel_congruence(3, 2, 5).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "3 (mod 5)");

        assert!(kernel_congruence(4, 3, 7).unwrap().is_pass());
        assert!(kernel_congruence(6, 1, 7).unwrap().is_pass());
        assert!(kernel_congruence(2, 2, 7).unwrap().is_not_applicable());
    }

    #[test]
    fn mortenson_examples() {
        let reports = verify_mortenson(5).unwrap();
        assert_eq!(reports.len(), 4);
        // (-1/5) = +1
        assert_eq!(reports[0].computed, "1 (mod 25)");
        assert!(reports.iter().all(CheckReport::is_pass));

        let reports = verify_mortenson(7).unwrap();
        // (-1/7) = -1 lifts to 48
        assert_eq!(reports[0].computed, "48 (mod 49)");
        // (-3/7) = +1
        assert_eq!(reports[1].expected, "1 (mod 49)");
        assert!(reports.iter().all(CheckReport::is_pass));

        assert_eq!(verify_mortenson(3).unwrap_err(), Error::PrimeBelowFive(3));
        assert!(verify_mortenson(9).is_err());
    }

    #[test]
    fn sun_examples() {
        let r = verify_sun(&rat("1/2"), 5).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "1 (mod 25)");

        // (1)_k (0)_k kills every k >= 1
        let r = verify_sun(&rat("1"), 7).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "1 (mod 49)");

        // {1/3}_7 = 5, expected (-1)^4 = 1
        let r = verify_sun(&rat("1/3"), 7).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.expected, "1 (mod 49)");

        // {alpha}_p = 0 is not covered
        assert!(verify_sun(&rat("7"), 7).unwrap().is_not_applicable());

        // {1/2}_3 = 2, expected -1 lifted to 8
        let r = verify_sun(&rat("1/2"), 3).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.computed, "8 (mod 9)");
    }

    #[test]
    fn theorem_symmetry_in_parameters() {
        for (a, b) in [("1/2", "3"), ("2", "3"), ("5/6", "5/3")] {
            let r1 = verify_main_theorem(&rat(a), &rat(b), 7).unwrap();
            let r2 = verify_main_theorem(&rat(b), &rat(a), 7).unwrap();
            assert!(r1.is_pass(), "{r1:?}");
            assert_eq!(r1.computed, r2.computed);
        }
        // hypothesis gating is symmetric too
        let r1 = verify_main_theorem(&rat("5/6"), &rat("7/6"), 7).unwrap();
        let r2 = verify_main_theorem(&rat("7/6"), &rat("5/6"), 7).unwrap();
        assert!(r1.is_not_applicable() && r2.is_not_applicable());
    }

    #[test]
    fn substitution_links_theorem_and_alt_form() {
        // negating both parameters swaps hypothesis sides and preserves the
        // computed residue; {2/3}_7 + {5/3}_7 = 3 + 4 lands on the boundary
        for (a, b, p) in [("1/2", "3", 7u64), ("2", "3", 5), ("2/3", "5/3", 7)] {
            let main = verify_main_theorem(&rat(a), &rat(b), p).unwrap();
            let alt = verify_alt_form(&-rat(a), &-rat(b), p).unwrap();
            assert!(main.is_pass(), "{main:?}");
            assert_eq!(main.computed, alt.computed, "(a,b,p)=({a},{b},{p})");
        }
    }
}
