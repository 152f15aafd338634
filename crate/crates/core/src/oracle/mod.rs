//! Independent reference values for error measurement and digit checks.
//!
//! π comes from two different arctangent identities evaluated in fixed point
//! and compared against each other. Nothing here touches Bernoulli or Euler
//! numbers.

mod embedded;

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use embedded::PI_1000;

use crate::approximants::{ApproxResult, ErrorScale};
use crate::error::{Error, Result};
use crate::precision::{check_base, decimal_bits, ArbReal};
use crate::special::factorial_exact;

/// Largest digit count a caller may request from [`reference`].
pub const MAX_REFERENCE_DIGITS: u64 = 20_000;

/// Decimal digits computed beyond the certified count.
const GUARD_DIGITS: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constant {
    Pi,
    PiPower(u64),
    InvPi,
    PiSquared,
    Factorial(u64),
}

impl std::fmt::Display for Constant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Constant::Pi => write!(f, "pi"),
            Constant::PiPower(k) => write!(f, "pi^{k}"),
            Constant::InvPi => write!(f, "1/pi"),
            Constant::PiSquared => write!(f, "pi^2"),
            Constant::Factorial(n) => write!(f, "{n}!"),
        }
    }
}

/// A reference value with relative error at most `10^-certified_digits10`.
#[derive(Clone, Debug, PartialEq)]
pub struct Reference {
    pub constant: Constant,
    pub value: ArbReal,
    pub certified_digits10: u64,
}

/// `floor(log10)` of a measured error, or the floor below which the
/// reference cannot resolve it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMeasure {
    Exponent(i64),
    BelowFloor(i64),
}

impl ErrorMeasure {
    pub fn exponent(self) -> i64 {
        match self {
            ErrorMeasure::Exponent(e) | ErrorMeasure::BelowFloor(e) => e,
        }
    }

    pub fn is_below_floor(self) -> bool {
        matches!(self, ErrorMeasure::BelowFloor(_))
    }
}

/// `atan(1/q) * 2^scale` truncated, with a bound on the truncation error in units.
fn arctan_inv(q: u64, scale: u64) -> (BigInt, u64) {
    let q2 = q * q;
    let mut term = (BigUint::one() << scale) / q;
    let mut pos = term.clone();
    let mut neg = BigUint::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        term /= q2;
        let t = &term / (2 * k + 1);
        if k % 2 == 1 {
            neg += t;
        } else {
            pos += t;
        }
        k += 1;
    }
    (BigInt::from(pos) - BigInt::from(neg), 2 * k + 2)
}

fn combine(parts: &[(i64, u64)], scale: u64) -> (BigInt, u64) {
    let mut sum = BigInt::zero();
    let mut err = 0u64;
    for &(coeff, q) in parts {
        let (v, e) = arctan_inv(q, scale);
        sum += v * coeff;
        err += coeff.unsigned_abs() * e;
    }
    (sum, err)
}

/// π = 16 atan(1/5) - 4 atan(1/239).
fn machin(scale: u64) -> (BigInt, u64) {
    combine(&[(16, 5), (-4, 239)], scale)
}

/// π = 48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239).
fn gauss(scale: u64) -> (BigInt, u64) {
    combine(&[(48, 18), (32, 57), (-20, 239)], scale)
}

/// π·2^scale within `err` units.
#[derive(Clone, Debug)]
struct FixedPi {
    scale: u64,
    value: BigInt,
    err: u64,
}

impl FixedPi {
    fn truncate(&self, scale: u64) -> FixedPi {
        let shift = self.scale - scale;
        FixedPi {
            scale,
            value: &self.value >> shift,
            err: (self.err >> shift.min(63)) + 2,
        }
    }
}

static MEMO: Mutex<Option<FixedPi>> = Mutex::new(None);

/// Computes π at `scale` fractional bits with both identities and checks
/// that they agree within their combined error bounds.
fn fixed_pi(scale: u64) -> Result<FixedPi> {
    if let Some(m) = MEMO.lock().unwrap().as_ref() {
        if m.scale >= scale {
            return Ok(m.truncate(scale));
        }
    }
    let (a, ea) = machin(scale);
    let (b, eb) = gauss(scale);
    if (&a - &b).abs() > BigInt::from(ea + eb) {
        return Err(Error::Consistency(format!(
            "arctangent identities disagree at {scale} bits"
        )));
    }
    let fixed = FixedPi {
        scale,
        value: a,
        err: ea,
    };
    let mut memo = MEMO.lock().unwrap();
    if memo.as_ref().is_none_or(|m| m.scale < scale) {
        *memo = Some(fixed.clone());
    }
    Ok(fixed)
}

/// Evaluates both identities afresh at `digits10` digits and fails unless
/// they agree within their error bounds.
pub fn dual_identity_check(digits10: u64) -> Result<()> {
    let scale = decimal_bits(digits10 + GUARD_DIGITS) + 64;
    let (a, ea) = machin(scale);
    let (b, eb) = gauss(scale);
    if (&a - &b).abs() > BigInt::from(ea + eb) {
        return Err(Error::Consistency(format!(
            "arctangent identities disagree at {digits10} digits"
        )));
    }
    Ok(())
}

/// Correctly rounded π at `precision` bits.
///
/// The result does not depend on how much of π happens to be memoised.
pub fn pi_value(precision: u64) -> Result<ArbReal> {
    let mut scale = precision + 64;
    for _ in 0..8 {
        let f = fixed_pi(scale)?;
        let lo = ArbReal::from_dyadic(&(&f.value - f.err), -(scale as i64), precision);
        let hi = ArbReal::from_dyadic(&(&f.value + f.err), -(scale as i64), precision);
        if lo == hi {
            return Ok(lo);
        }
        scale += 64;
    }
    Err(Error::Consistency("cannot round pi unambiguously".into()))
}

/// `"3."` followed by the first `decimals` decimals of π, truncated.
pub fn pi_decimal_string(decimals: u64) -> Result<String> {
    let ten_pow = num_traits::pow(BigInt::from(10), decimals as usize);
    let mut scale = decimal_bits(decimals) + 64;
    for _ in 0..8 {
        let f = fixed_pi(scale)?;
        let lo = ((&f.value - f.err) * &ten_pow) >> scale;
        let hi = ((&f.value + f.err) * &ten_pow) >> scale;
        if lo == hi {
            let s = lo.to_string();
            return Ok(format!("{}.{}", &s[..1], &s[1..]));
        }
        scale += 64;
    }
    Err(Error::Consistency("cannot truncate pi unambiguously".into()))
}

/// Compares a decimal string for π (such as [`PI_1000`]) with the computed
/// expansion.
pub fn check_embedded_constant(text: &str) -> Result<()> {
    let decimals = text
        .strip_prefix("3.")
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| Error::Consistency("embedded-constant mismatch: malformed string".into()))?;
    let computed = pi_decimal_string(decimals.len() as u64)?;
    match computed.bytes().zip(text.bytes()).position(|(a, b)| a != b) {
        None => Ok(()),
        Some(i) => Err(Error::Consistency(format!(
            "embedded-constant mismatch at decimal {}",
            i - 1
        ))),
    }
}

fn check_digits(digits10: u64) -> Result<()> {
    if digits10 == 0 {
        return Err(Error::domain("reference needs at least one digit"));
    }
    if digits10 > MAX_REFERENCE_DIGITS {
        return Err(Error::ResourceCap(format!(
            "reference of {digits10} digits exceeds {MAX_REFERENCE_DIGITS}"
        )));
    }
    Ok(())
}

/// π certified to `digits10` digits.
pub fn reference_pi(digits10: u64) -> Result<Reference> {
    reference(Constant::Pi, digits10)
}

/// A reference for `constant` with relative error at most `10^-digits10`.
///
/// Powers and the reciprocal are formed from π at extended precision.
pub fn reference(constant: Constant, digits10: u64) -> Result<Reference> {
    check_digits(digits10)?;
    let p = decimal_bits(digits10 + GUARD_DIGITS);
    let value = match constant {
        Constant::Pi => pi_value(p)?,
        Constant::PiPower(k) => {
            let w = p + 2 * (64 - k.leading_zeros() as u64) + 16;
            pi_value(w)?.pow_int(k as i64)?.with_precision(p)
        }
        Constant::PiSquared => pi_value(p + 16)?.pow_int(2)?.with_precision(p),
        Constant::InvPi => ArbReal::one(p + 16).div(&pi_value(p + 16)?, p)?,
        Constant::Factorial(n) => ArbReal::from_bigint(&factorial_exact(n), p),
    };
    Ok(Reference {
        constant,
        value,
        certified_digits10: digits10,
    })
}

/// A reference precise enough to measure `approx`.
pub fn reference_for(approx: &ApproxResult) -> Result<Reference> {
    let target = approx.target();
    let magnitude = match approx.error_scale {
        ErrorScale::Absolute => crate::approximants::target_log10(target).ceil().max(0.0) as u64,
        ErrorScale::Relative => 0,
    };
    reference(target, approx.apriori_error_log10.unsigned_abs() + magnitude + 40)
}

/// `log10` of the reference uncertainty on `scale`.
fn floor_log10(reference: &Reference, scale: ErrorScale) -> f64 {
    let rel = -(reference.certified_digits10 as f64);
    match scale {
        ErrorScale::Absolute => rel + reference.value.log10_abs(),
        ErrorScale::Relative => rel,
    }
}

/// `|value - reference|`, divided by `|reference|` on the relative scale.
pub fn error_value(value: &ArbReal, reference: &Reference, scale: ErrorScale) -> Result<ArbReal> {
    let w = value.precision().max(reference.value.precision()) + 64;
    let diff = value.sub(&reference.value, w).abs();
    match scale {
        ErrorScale::Absolute => Ok(diff),
        ErrorScale::Relative => diff.div(&reference.value.abs(), w),
    }
}

/// Measures `approx` against `reference` and records the result in
/// `approx.measured_error_log10`.
pub fn measured_error_log10(approx: &mut ApproxResult, reference: &Reference) -> Result<ErrorMeasure> {
    if approx.target() != reference.constant {
        return Err(Error::domain(format!(
            "approximation of {} measured against {}",
            approx.target(),
            reference.constant
        )));
    }
    let floor = floor_log10(reference, approx.error_scale);
    if floor > (approx.apriori_error_log10 - 5) as f64 {
        return Err(Error::precision(format!(
            "reference resolves 1e{:.0}, predicted error is 1e{}",
            floor, approx.apriori_error_log10
        )));
    }
    let err = error_value(&approx.value, reference, approx.error_scale)?;
    let log = err.log10_abs();
    let measure = if err.is_zero() || log < floor + 1.0 {
        ErrorMeasure::BelowFloor(floor.ceil() as i64 + 1)
    } else {
        ErrorMeasure::Exponent(log.floor() as i64)
    };
    approx.measured_error_log10 = Some(measure);
    Ok(measure)
}

/// Measures `approx` against a freshly built reference.
pub fn measure(approx: &mut ApproxResult) -> Result<ErrorMeasure> {
    let reference = reference_for(approx)?;
    measured_error_log10(approx, &reference)
}

/// `floor(x * base^(n+1)) mod base` for a dyadic `x >= 0`.
fn dyadic_digit(num: &BigInt, exp: i64, n: u64, base: u32) -> u32 {
    let scaled = num * num_traits::pow(BigInt::from(base), n as usize + 1);
    let int = if exp >= 0 {
        scaled << exp as u64
    } else {
        scaled >> (-exp) as u64
    };
    int.mod_floor(&BigInt::from(base)).to_u32().unwrap()
}

/// The digit of the reference value at fractional position `n` in `base`,
/// or a precision error when the reference cannot decide it.
pub fn reference_digit(reference: &Reference, n: u64, base: u32) -> Result<u32> {
    check_base(base)?;
    let v = &reference.value;
    if v.is_negative() {
        return Err(Error::domain("digits of a negative reference"));
    }
    let (num, exp) = v.to_dyadic();
    let top = v.top_exponent().unwrap_or(0);
    let slack = (reference.certified_digits10 as f64 * std::f64::consts::LOG2_10).floor() as i64;
    let err_exp = top - slack;
    let e = exp.min(err_exp);
    let centre = num << (exp - e) as u64;
    let delta = BigInt::one() << (err_exp - e) as u64;
    let lo = dyadic_digit(&(&centre - &delta), e, n, base);
    let hi = dyadic_digit(&(&centre + &delta), e, n, base);
    if lo != hi {
        return Err(Error::precision(format!(
            "reference of {} digits cannot resolve position {n} in base {base}",
            reference.certified_digits10
        )));
    }
    Ok(lo)
}

/// Decimal digits a reference needs to decide position `n` in `base`.
pub fn digits_for_position(n: u64, base: u32) -> u64 {
    ((n + 1) as f64 * (base as f64).log10()).ceil() as u64 + 12
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_agree() {
        for digits in [10u64, 100, 1000] {
            let scale = decimal_bits(digits) + 64;
            let (a, ea) = machin(scale);
            let (b, eb) = gauss(scale);
            assert!((a - b).abs() <= BigInt::from(ea + eb));
        }
    }

    #[test]
    fn short_references() {
        assert!(pi_decimal_string(10).unwrap() == "3.1415926535");
        assert_eq!(pi_decimal_string(1).unwrap(), "3.1");
        let r = reference_pi(10).unwrap();
        assert!((r.value.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(reference_pi(0).is_err());
        assert!(matches!(reference_pi(20_001), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn embedded_constant_matches() {
        check_embedded_constant(PI_1000).unwrap();
        let tampered = PI_1000.replace("58209749", "58209748");
        let err = check_embedded_constant(&tampered).unwrap_err();
        assert!(err.to_string().contains("embedded-constant mismatch"), "{err}");
    }

    #[test]
    fn rounding_is_deterministic() {
        let a = pi_value(3000).unwrap();
        let b = pi_value(200).unwrap();
        assert_eq!(pi_value(200).unwrap(), b);
        assert_eq!(a.with_precision(200), b);
    }

    #[test]
    fn derived_references() {
        let sq = reference(Constant::PiSquared, 30).unwrap();
        assert!((sq.value.to_f64() - 9.869604401089358).abs() < 1e-14);
        let inv = reference(Constant::InvPi, 30).unwrap();
        assert!((inv.value.to_f64() - std::f64::consts::FRAC_1_PI).abs() < 1e-16);
        let p3 = reference(Constant::PiPower(3), 30).unwrap();
        assert!((p3.value.to_f64() - 31.006276680299816).abs() < 1e-12);
    }

    #[test]
    fn digits_of_reference() {
        let r = reference_pi(40).unwrap();
        let decimals = "1415926535897932384626433832795028841971";
        for (n, c) in decimals.chars().take(30).enumerate() {
            assert_eq!(reference_digit(&r, n as u64, 10).unwrap(), c.to_digit(10).unwrap());
        }
        // 3.243F6A88 in hex
        let hex = [2, 4, 3, 15, 6, 10, 8, 8];
        for (n, d) in hex.iter().enumerate() {
            assert_eq!(reference_digit(&r, n as u64, 16).unwrap(), *d);
        }
        assert!(reference_digit(&r, 60, 10).is_err());
    }
}
