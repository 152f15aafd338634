use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    auto_bits, floor_log10_pow, log10_nth_prime, ApproxResult, FactorialSource, MethodId,
    MethodSpec, Precision, RatioSource, Variant,
};
use crate::error::{Error, Result};
use crate::oracle;
use crate::precision::ArbReal;
use crate::special::{central_binomial, factorial_exact, SpecialNumbers};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Correction coefficients of `Γ(n+1) / (√(2πn) (n/e)^n)` in powers of `1/n`.
pub const STIRLING_SERIES: [(i64, i64); 6] = [
    (1, 1),
    (1, 12),
    (1, 288),
    (-139, 51840),
    (-571, 2_488_320),
    (163_879, 209_018_880),
];

/// Coefficients of `16^n / (n π C(2n,n)^2)` in powers of `1/n`.
const BINOMIAL_SERIES: [(i64, i64); 5] = [(1, 1), (1, 4), (1, 32), (-1, 128), (-5, 2048)];

const LOG10_PI: f64 = 0.497_149_872_694_133_85;

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// Validates a request and returns `(terms, variant, apriori_error_log10)`.
pub(crate) fn check_spec(spec: &MethodSpec) -> Result<(u32, Option<Variant>, i64)> {
    use MethodId::*;
    let MethodSpec { method, n, .. } = *spec;
    let terms = spec.terms.unwrap_or(method.default_terms());
    let variant = spec.variant.or(method.default_variant());
    let fixed_terms = |allowed: u32| -> Result<()> {
        if terms != allowed {
            return Err(domain(format!("{method} uses exactly {allowed} correction terms")));
        }
        Ok(())
    };
    let terms_in = |lo: u32, hi: u32| -> Result<()> {
        if terms < lo || terms > hi {
            return Err(domain(format!("{method} takes {lo} to {hi} correction terms, got {terms}")));
        }
        Ok(())
    };
    let min_n = |lo: u64| -> Result<()> {
        if n < lo {
            return Err(domain(format!("{method} requires n >= {lo}, got {n}")));
        }
        Ok(())
    };
    let even = || -> Result<()> {
        if n % 2 == 1 {
            return Err(domain(format!("{method} requires an even index, got {n}")));
        }
        Ok(())
    };
    match (method, variant) {
        (EulerPowerOdd, Some(Variant::AsPrinted | Variant::BetaSeries)) => {}
        (EulerInverse, Some(Variant::AsPrinted | Variant::ReciprocalFactor)) => {}
        (EulerPowerOdd | EulerInverse, v) => {
            return Err(domain(format!("variant {v:?} does not apply to {method}")))
        }
        (_, None) => {}
        (_, Some(v)) => return Err(domain(format!("variant {v} does not apply to {method}"))),
    }
    let k = 2 * n + 1;
    let apriori = match method {
        BernoulliBasic => {
            even()?;
            min_n(10)?;
            fixed_terms(0)?;
            -floor_log10_pow(n, 2.0)
        }
        BernoulliCorrected | BernoulliPower => {
            even()?;
            min_n(10)?;
            if method == BernoulliCorrected {
                terms_in(1, 4)?;
            } else {
                terms_in(0, 4)?;
            }
            let tail = (n as f64 * log10_nth_prime(terms as u64 + 1)).floor() as i64;
            if method == BernoulliPower {
                -tail + (n as f64 * LOG10_PI).floor() as i64
            } else {
                -tail
            }
        }
        EulerBasic => {
            min_n(1)?;
            fixed_terms(0)?;
            -floor_log10_pow(k, 3.0)
        }
        EulerCorrected => {
            min_n(1)?;
            fixed_terms(1)?;
            -floor_log10_pow(k, 5.0)
        }
        EulerPowerOdd => {
            min_n(1)?;
            fixed_terms(4)?;
            let next = if variant == Some(Variant::AsPrinted) { 9.0 } else { 11.0 };
            -floor_log10_pow(k, next) + (k as f64 * LOG10_PI).floor() as i64
        }
        EulerInverse => {
            min_n(1)?;
            fixed_terms(1)?;
            let next = if variant == Some(Variant::AsPrinted) { 3.0 } else { 5.0 };
            -floor_log10_pow(k, next)
        }
        RatioBernoulliSq => {
            min_n(5)?;
            fixed_terms(0)?;
            -floor_log10_pow(n, 4.0)
        }
        RatioEulerSq => {
            min_n(5)?;
            fixed_terms(0)?;
            -floor_log10_pow(n, 9.0)
        }
        FactorialBernoulli => {
            even()?;
            min_n(2)?;
            fixed_terms(0)?;
            -floor_log10_pow(n, 2.0)
        }
        FactorialEuler => {
            even()?;
            min_n(2)?;
            fixed_terms(0)?;
            -floor_log10_pow(n + 1, 3.0)
        }
        FactorialStirling => {
            min_n(1)?;
            terms_in(0, 4)?;
            let (a, b) = STIRLING_SERIES[terms as usize + 1];
            let next = (a.abs() as f64 / b as f64).log10() - (terms as f64 + 1.0) * (n as f64).log10();
            next.floor() as i64
        }
        PiStirling => {
            min_n(2)?;
            fixed_terms(0)?;
            -floor_log10_pow(2, n as f64)
        }
        PiPartition => {
            min_n(10)?;
            fixed_terms(0)?;
            -floor_log10_pow(1, n as f64)
        }
        PiBinomialBasic => {
            min_n(1)?;
            fixed_terms(0)?;
            -floor_log10_pow(1, n as f64)
        }
        PiBinomialSeries => {
            min_n(1)?;
            terms_in(1, 4)?;
            -floor_log10_pow(terms as u64 + 1, n as f64)
        }
    };
    Ok((terms, variant, apriori))
}

/// Evaluates one formula.
pub fn evaluate(numbers: &SpecialNumbers, spec: &MethodSpec, precision: Precision) -> Result<ApproxResult> {
    use MethodId::*;
    let (terms, variant, apriori) = check_spec(spec)?;
    let MethodSpec { method, n, .. } = *spec;
    let bits = match precision {
        Precision::Auto => auto_bits(method.target(n), method.error_scale(), apriori),
        Precision::Bits(b) => b.max(16),
    };
    let value = match method {
        BernoulliBasic | BernoulliCorrected => {
            let (num, den) = bernoulli_radicand(numbers, n, terms)?;
            ArbReal::from_ratio(&num, &den, bits)?.nth_root(n)?
        }
        BernoulliPower => {
            let (num, den) = bernoulli_radicand(numbers, n, terms)?;
            ArbReal::from_ratio(&num, &den, bits)?
        }
        EulerBasic | EulerCorrected | EulerPowerOdd => {
            let (num, den) = euler_radicand(numbers, n, method, variant)?;
            let r = ArbReal::from_ratio(&num, &den, bits)?;
            if method == EulerPowerOdd {
                r
            } else {
                r.nth_root(2 * n + 1)?
            }
        }
        EulerInverse => {
            let (num, den) = euler_radicand(numbers, n, method, variant)?;
            ArbReal::from_ratio(&den, &num, bits)?.nth_root(2 * n + 1)?
        }
        RatioBernoulliSq => {
            let b0 = numbers.bernoulli(2 * n)?.abs();
            let b1 = numbers.bernoulli(2 * n + 2)?.abs();
            let q = b0 * BigInt::from((n + 1) * (2 * n + 1)) / (b1 * BigInt::from(2));
            ArbReal::from_ratio(q.numer(), q.denom(), bits)?
        }
        RatioEulerSq => {
            let e0 = numbers.euler(2 * n)?.abs();
            let e1 = numbers.euler(2 * n + 2)?.abs();
            ArbReal::from_ratio(&(e0 * 8 * (n + 1) * (2 * n + 1)), &e1, bits)?
        }
        FactorialBernoulli => factorial_bernoulli(numbers, n, bits)?,
        FactorialEuler => factorial_euler(numbers, n, bits)?,
        FactorialStirling => factorial_stirling(n, terms, bits)?,
        PiStirling => stirling_pi(n, bits)?,
        PiPartition => partition_pi(numbers, n, bits)?,
        PiBinomialBasic | PiBinomialSeries => binomial_pi(n, terms, bits)?,
    };
    Ok(ApproxResult {
        value,
        method,
        index_n: n,
        correction_terms: terms,
        apriori_error_log10: apriori,
        measured_error_log10: None,
        variant,
        error_scale: method.error_scale(),
    })
}

/// `2 m! / (|B_m| 2^m prod_{p}(1 - p^-m))` as a numerator/denominator pair.
fn bernoulli_radicand(numbers: &SpecialNumbers, m: u64, primes: u32) -> Result<(BigInt, BigInt)> {
    let b = numbers.bernoulli(m)?;
    let mut num = factorial_exact(m) * b.denom() * 2;
    let mut den = b.numer().abs() << m as usize;
    for &p in &PRIMES[..primes as usize] {
        let pm = pow(p, m);
        den *= &pm - 1;
        num *= pm;
    }
    Ok((num, den))
}

/// `(2n)! 2^(2n+2) / |E_2n|` times the requested correction factors.
fn euler_radicand(
    numbers: &SpecialNumbers,
    n: u64,
    method: MethodId,
    variant: Option<Variant>,
) -> Result<(BigInt, BigInt)> {
    let k = 2 * n + 1;
    let mut num = factorial_exact(2 * n) << (2 * n + 2) as usize;
    let mut den = numbers.euler(2 * n)?.abs();
    // each factor is (q^k + sign) / q^k
    let factors: &[(u64, i64)] = match (method, variant) {
        (MethodId::EulerBasic, _) => &[],
        (MethodId::EulerCorrected, _) | (MethodId::EulerInverse, Some(Variant::ReciprocalFactor)) => {
            &[(3, -1)]
        }
        (MethodId::EulerInverse, _) => &[(3, 1)],
        (_, Some(Variant::AsPrinted)) => &[(3, -1), (5, 1), (7, -1), (9, -1)],
        _ => &[(3, -1), (5, 1), (7, -1), (9, 1)],
    };
    for &(q, sign) in factors {
        let qk = pow(q, k);
        if method == MethodId::EulerInverse && sign > 0 {
            // the printed 1/π factor (1 - 3^-k) divides the π radicand
            num *= &qk;
            den *= qk - 1;
        } else {
            num *= &qk + sign;
            den *= qk;
        }
    }
    Ok((num, den))
}

fn factorial_bernoulli(numbers: &SpecialNumbers, n: u64, bits: u64) -> Result<ArbReal> {
    let w = bits + 32;
    let b = numbers.bernoulli(n)?;
    let two_pi = oracle::pi_value(w + 64)?.mul_pow2(1).with_precision(w);
    let scaled = two_pi.pow_int(n as i64)?;
    let coeff = ArbReal::from_ratio(&b.numer().abs(), &(b.denom() * 2), w)?;
    Ok(scaled.mul(&coeff, bits))
}

fn factorial_euler(numbers: &SpecialNumbers, n: u64, bits: u64) -> Result<ArbReal> {
    let w = bits + 32;
    let e = numbers.euler(n)?.abs();
    let pi = oracle::pi_value(w + 64)?.with_precision(w);
    let power = pi.pow_int(n as i64 + 1)?;
    Ok(power
        .mul(&ArbReal::from_bigint(&e, w), bits)
        .mul_pow2(-(n as i64 + 2)))
}

/// Sum of the first `terms + 1` coefficients of `series` at `1/n`, exactly.
fn series_sum(series: &[(i64, i64)], n: u64, terms: u32) -> BigRational {
    let mut sum = BigRational::zero();
    let mut npow = BigInt::one();
    for &(a, b) in &series[..=terms as usize] {
        sum += BigRational::new(BigInt::from(a), BigInt::from(b) * &npow);
        npow *= n;
    }
    sum
}

fn factorial_stirling(n: u64, terms: u32, bits: u64) -> Result<ArbReal> {
    let w = bits + 32;
    let pi = oracle::pi_value(w + 64)?.with_precision(w);
    let root = pi.mul_u64(2 * n, w).sqrt()?;
    let nn = ArbReal::from_bigint(&pow(n, n), w);
    let decay = ArbReal::from_i64(-(n as i64), w).exp()?;
    let s = series_sum(&STIRLING_SERIES, n, terms);
    let s = ArbReal::from_ratio(s.numer(), s.denom(), w)?;
    Ok(root.mul(&nn, w).mul(&decay, w).mul(&s, bits))
}

/// `Γ(n)^2 n^(1-2n) e^(2n) / (2 (1 + 1/6n)(1 - 5/36n^2)(1 + 1/72n^2))`.
fn stirling_pi(n: u64, bits: u64) -> Result<ArbReal> {
    let w = bits + 32;
    let g = factorial_exact(n - 1);
    let n2 = BigInt::from(n) * n;
    let num = &g * &g * (BigInt::from(6 * n) * &n2 * 36 * &n2 * 72);
    let den = pow(n, 2 * n - 1)
        * 2
        * BigInt::from(6 * n + 1)
        * (&n2 * 36 - 5)
        * (&n2 * 72 + 1);
    let q = ArbReal::from_ratio(&num, &den, w)?;
    let growth = ArbReal::from_u64(2 * n, w).exp()?;
    Ok(q.mul(&growth, bits))
}

/// `ln(48 p(n)^2 n^2) √6 / (4 √n)`.
fn partition_pi(numbers: &SpecialNumbers, n: u64, bits: u64) -> Result<ArbReal> {
    let w = bits + 32;
    let p = numbers.partition(n);
    let arg = &p * &p * BigInt::from(n) * n * 48;
    let log = ArbReal::from_bigint(&arg, w).ln()?;
    let root6 = ArbReal::from_u64(6, w).sqrt()?;
    let root_n = ArbReal::from_u64(n, w).sqrt()?.mul_pow2(2);
    log.mul(&root6, w).div(&root_n, bits)
}

/// `16^n / (n C(2n,n)^2 S)` with `S` the series truncated after `terms` corrections.
fn binomial_pi(n: u64, terms: u32, bits: u64) -> Result<ArbReal> {
    let c = central_binomial(n);
    let s = series_sum(&BINOMIAL_SERIES, n, terms);
    let num = (BigInt::one() << (4 * n) as usize) * s.denom();
    let den = c.pow(2) * n * s.numer();
    ArbReal::from_ratio(&num, &den, bits)
}

fn spec(method: MethodId, n: u64) -> MethodSpec {
    MethodSpec::new(method, n)
}

/// π from the Bernoulli number `B_m`, optionally corrected by the first
/// `primes` Euler-product factors.
pub fn pi_bernoulli(numbers: &SpecialNumbers, m: u64, primes: u32, precision: Precision) -> Result<ApproxResult> {
    let method = if primes == 0 {
        MethodId::BernoulliBasic
    } else {
        MethodId::BernoulliCorrected
    };
    evaluate(numbers, &spec(method, m).with_terms(primes), precision)
}

/// π^m from `B_m` with four Euler-product factors and no root.
pub fn pi_power_bernoulli(numbers: &SpecialNumbers, m: u64, precision: Precision) -> Result<ApproxResult> {
    evaluate(numbers, &spec(MethodId::BernoulliPower, m), precision)
}

/// π from `E_2n`, optionally corrected by `(1 - 3^-(2n+1))`.
pub fn pi_euler(numbers: &SpecialNumbers, n: u64, corrected: bool, precision: Precision) -> Result<ApproxResult> {
    let method = if corrected {
        MethodId::EulerCorrected
    } else {
        MethodId::EulerBasic
    };
    evaluate(numbers, &spec(method, n), precision)
}

/// π^(2n+1) from `E_2n` with four correction factors.
pub fn pi_power_euler_odd(
    numbers: &SpecialNumbers,
    n: u64,
    variant: Variant,
    precision: Precision,
) -> Result<ApproxResult> {
    evaluate(numbers, &spec(MethodId::EulerPowerOdd, n).with_variant(variant), precision)
}

/// 1/π from `E_2n`.
pub fn inv_pi_euler(numbers: &SpecialNumbers, n: u64, variant: Variant, precision: Precision) -> Result<ApproxResult> {
    evaluate(numbers, &spec(MethodId::EulerInverse, n).with_variant(variant), precision)
}

/// π² from two successive Bernoulli or Euler numbers.
pub fn pi_squared_ratio(
    numbers: &SpecialNumbers,
    source: RatioSource,
    n: u64,
    precision: Precision,
) -> Result<ApproxResult> {
    let method = match source {
        RatioSource::Bernoulli => MethodId::RatioBernoulliSq,
        RatioSource::Euler => MethodId::RatioEulerSq,
    };
    evaluate(numbers, &spec(method, n), precision)
}

/// n! from `B_n`, `E_n` or the Stirling series with `stirling_terms` corrections.
pub fn factorial_approx(
    numbers: &SpecialNumbers,
    source: FactorialSource,
    n: u64,
    stirling_terms: u32,
    precision: Precision,
) -> Result<ApproxResult> {
    let s = match source {
        FactorialSource::Bernoulli => spec(MethodId::FactorialBernoulli, n),
        FactorialSource::Euler => spec(MethodId::FactorialEuler, n),
        FactorialSource::Stirling => spec(MethodId::FactorialStirling, n).with_terms(stirling_terms),
    };
    evaluate(numbers, &s, precision)
}

pub fn pi_stirling(n: u64, precision: Precision) -> Result<ApproxResult> {
    evaluate(SpecialNumbers::global(), &spec(MethodId::PiStirling, n), precision)
}

pub fn pi_partition(numbers: &SpecialNumbers, n: u64, precision: Precision) -> Result<ApproxResult> {
    evaluate(numbers, &spec(MethodId::PiPartition, n), precision)
}

pub fn pi_central_binomial(n: u64, series_terms: u32, precision: Precision) -> Result<ApproxResult> {
    let method = if series_terms == 0 {
        MethodId::PiBinomialBasic
    } else {
        MethodId::PiBinomialSeries
    };
    evaluate(
        SpecialNumbers::global(),
        &spec(method, n).with_terms(series_terms),
        precision,
    )
}
