//! Single digits and digit strings of approximated constants, with explicit
//! stability and boundary checks.
//!
//! Position 0 is the first digit after the radix point: the digit of `x` at
//! position `n` in base `b` is `floor(b * frac(b^n * x))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::approximants::{self, MethodId, MethodSpec, Precision, Variant};
use crate::error::{Error, Result};
use crate::oracle::{self, Constant};
use crate::precision::{check_base, decimal_bits, digit_bits, ArbReal, PrecisionPolicy};
use crate::special::SpecialNumbers;

/// Decimal digits of formula accuracy demanded beyond the requested position.
pub const SAFETY_DIGITS: u64 = 6;

/// Extra decimal digits demanded on the single automatic retry.
pub const RETRY_DIGITS: u64 = 10;

/// Default cap on the formula index chosen automatically.
pub const DEFAULT_MAX_INDEX: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Pi,
    PiPower(u64),
    InvPi,
    PiSquared,
}

impl Target {
    pub fn constant(self) -> Constant {
        match self {
            Target::Pi => Constant::Pi,
            Target::PiPower(k) => Constant::PiPower(k),
            Target::InvPi => Constant::InvPi,
            Target::PiSquared => Constant::PiSquared,
        }
    }

    /// The method used when the caller does not name one.
    pub fn default_method(self) -> Result<MethodId> {
        match self {
            Target::Pi => Ok(MethodId::BernoulliCorrected),
            Target::InvPi => Ok(MethodId::EulerInverse),
            Target::PiSquared => Ok(MethodId::RatioEulerSq),
            Target::PiPower(m) if m >= 10 && m % 2 == 0 => Ok(MethodId::BernoulliPower),
            Target::PiPower(m) if m >= 3 && m % 2 == 1 => Ok(MethodId::EulerPowerOdd),
            Target::PiPower(m) => Err(Error::domain(format!(
                "no formula approximates pi^{m}; use an even power >= 10 or an odd power >= 3"
            ))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Pi => f.write_str("pi"),
            Target::PiPower(k) => write!(f, "pi-power {k}"),
            Target::InvPi => f.write_str("inv-pi"),
            Target::PiSquared => f.write_str("pi-squared"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    /// `pi`, `inv-pi`, `pi-squared`, or `pi-power K` (also `pi-power:K`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "pi" => return Ok(Target::Pi),
            "inv-pi" => return Ok(Target::InvPi),
            "pi-squared" => return Ok(Target::PiSquared),
            _ => {}
        }
        let k = s
            .strip_prefix("pi-power")
            .map(|r| r.trim_start_matches([' ', ':', '=']))
            .ok_or_else(|| Error::domain(format!("unknown target '{s}'")))?;
        k.parse::<u64>()
            .ok()
            .filter(|&k| k >= 1)
            .map(Target::PiPower)
            .ok_or_else(|| Error::domain(format!("pi-power needs a positive integer, got '{k}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitResult {
    pub position: u64,
    pub base: u32,
    pub digit: u32,
    pub stable: bool,
    pub method: MethodId,
    /// Formula index the digit was read from.
    pub index_n: u64,
    pub precision_used: u64,
}

impl DigitResult {
    pub fn digit_char(&self) -> char {
        std::char::from_digit(self.digit, self.base).unwrap()
    }
}

/// `floor(x * base^(n+1)) mod base` and the remaining fraction, for `x >= 0`.
fn split_at_position(x: &ArbReal, n: u64, base: u32) -> (u32, BigInt, u64) {
    let (num, exp) = x.to_dyadic();
    let scaled = num * num_traits::pow(BigInt::from(base), n as usize + 1);
    if exp >= 0 {
        let int = scaled << exp as u64;
        let digit = int.mod_floor(&BigInt::from(base)).to_u32().unwrap();
        return (digit, BigInt::zero(), 0);
    }
    let frac_bits = (-exp) as u64;
    let (int, rem) = scaled.div_mod_floor(&(BigInt::one() << frac_bits));
    let digit = int.mod_floor(&BigInt::from(base)).to_u32().unwrap();
    (digit, rem, frac_bits)
}

fn require_fraction_bits(n: u64, x: &ArbReal, base: u32) -> Result<()> {
    let top = x.top_exponent().unwrap_or(0).max(0) as u64;
    let needed = top + digit_bits(n + 1, base) + 64;
    if x.precision() < needed {
        return Err(Error::precision(format!(
            "{} bits cannot resolve position {n} in base {base}; need {needed}",
            x.precision()
        )));
    }
    Ok(())
}

/// The digit of `x` at fractional position `n` in `base`.
pub fn position(n: u64, x: &ArbReal, base: u32) -> Result<u32> {
    check_base(base)?;
    if x.is_negative() {
        return Err(Error::domain("position of a negative value"));
    }
    require_fraction_bits(n, x, base)?;
    Ok(split_at_position(x, n, base).0)
}

/// Distance of `rem / 2^bits` from the nearest integer, as `log2`.
fn boundary_distance_log2(rem: &BigInt, bits: u64) -> f64 {
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let full = BigInt::one() << bits;
    let other = &full - rem;
    let near = if rem < &other { rem.clone() } else { other };
    if near.is_zero() {
        return f64::NEG_INFINITY;
    }
    ArbReal::from_bigint(&near, 64).log2_abs() - bits as f64
}

fn fraction_text(rem: &BigInt, bits: u64) -> String {
    if bits == 0 {
        return "0".into();
    }
    let f = ArbReal::from_dyadic(rem, -(bits as i64), 64).to_f64();
    format!("{f:.17}")
}

/// Selects the smallest index of `method` whose predicted error reaches
/// `10^-need`, or the fixed index for power targets.
fn select_index(method: MethodId, target: Target, need: i64, max_index: u64) -> Result<MethodSpec> {
    let fixed = match (target, method) {
        (Target::PiPower(m), MethodId::BernoulliPower) => Some(m),
        (Target::PiPower(m), MethodId::EulerPowerOdd) if m % 2 == 1 => Some((m - 1) / 2),
        (Target::PiPower(m), _) => {
            return Err(Error::domain(format!("method {method} cannot approximate pi^{m}")))
        }
        _ => None,
    };
    if let Some(n) = fixed {
        let spec = MethodSpec::new(method, n);
        let apriori = approximants::apriori_error_log10(&spec)?;
        if apriori > -need {
            return Err(Error::precision(format!(
                "{method} at index {n} predicts error 1e{apriori}; position needs 1e{}",
                -need
            )));
        }
        return Ok(spec);
    }
    if method.target(2) != target.constant() {
        return Err(Error::domain(format!("method {method} does not approximate {target}")));
    }
    let step = match method {
        MethodId::BernoulliBasic | MethodId::BernoulliCorrected => 2,
        _ => 1,
    };
    let mut n = step;
    while n <= max_index {
        let spec = MethodSpec::new(method, n);
        if let Ok(apriori) = approximants::apriori_error_log10(&spec) {
            if apriori <= -need {
                return Ok(spec);
            }
        }
        n += step;
    }
    Err(Error::ResourceCap(format!(
        "{method} needs an index above {max_index} to reach 1e{}",
        -need
    )))
}

/// The formula index a digit request ends up using at most, counting the
/// automatic retry.
pub fn planned_spec(
    target: Target,
    n: u64,
    base: u32,
    method: Option<MethodId>,
    max_index: u64,
) -> Result<MethodSpec> {
    check_base(base)?;
    let method = match method {
        Some(m) => m,
        None => target.default_method()?,
    };
    let need = ((n + 1) as f64 * (base as f64).log10()).ceil() as i64 + (SAFETY_DIGITS + RETRY_DIGITS) as i64;
    select_index(method, target, need, max_index)
}

/// One stability-checked evaluation. `Ok(None)` means unstable.
fn attempt(
    numbers: &SpecialNumbers,
    spec: &MethodSpec,
    target: Target,
    n: u64,
    base: u32,
) -> Result<(Option<DigitResult>, String)> {
    let apriori = approximants::apriori_error_log10(spec)?;
    let magnitude = approximants::target_log10(target.constant()).ceil().max(0.0) as u64;
    let policy = PrecisionPolicy::new(n + 1, base)?;
    let p = digit_bits(n + 1, base)
        + decimal_bits(magnitude + SAFETY_DIGITS + RETRY_DIGITS)
        + policy.guard_bits;
    let variant = match spec.method {
        MethodId::EulerPowerOdd => Some(Variant::BetaSeries),
        MethodId::EulerInverse => Some(Variant::ReciprocalFactor),
        _ => None,
    };
    let spec = MethodSpec { variant, ..*spec };
    // formula error scaled to the digit: b^(n+1) 10^(apriori + 2)
    let formula_log2 = digit_bits(n + 1, base) as f64 + (apriori + 2) as f64 * std::f64::consts::LOG2_10;
    let threshold_log2 = formula_log2.max(-(policy.guard_bits as f64) / 2.0);
    let mut seen: Option<u32> = None;
    let mut fraction = String::new();
    for bits in [p, p + 64] {
        let approx = approximants::evaluate(numbers, &spec, Precision::Bits(bits))?;
        require_fraction_bits(n, &approx.value, base)?;
        let (digit, rem, frac_bits) = split_at_position(&approx.value, n, base);
        fraction = fraction_text(&rem, frac_bits);
        if boundary_distance_log2(&rem, frac_bits) <= threshold_log2 {
            return Ok((None, fraction));
        }
        if seen.is_some_and(|d| d != digit) {
            return Ok((None, fraction));
        }
        seen = Some(digit);
    }
    Ok((
        Some(DigitResult {
            position: n,
            base,
            digit: seen.unwrap(),
            stable: true,
            method: spec.method,
            index_n: spec.n,
            precision_used: p + 64,
        }),
        fraction,
    ))
}

/// The digit of `target` at fractional position `n` in `base`, read from
/// `method` (or the target's default) at the smallest sufficient index.
pub fn digit_of(
    numbers: &SpecialNumbers,
    target: Target,
    n: u64,
    base: u32,
    method: Option<MethodId>,
) -> Result<DigitResult> {
    digit_of_capped(numbers, target, n, base, method, DEFAULT_MAX_INDEX)
}

/// [`digit_of`] with an explicit cap on the automatically chosen index.
pub fn digit_of_capped(
    numbers: &SpecialNumbers,
    target: Target,
    n: u64,
    base: u32,
    method: Option<MethodId>,
    max_index: u64,
) -> Result<DigitResult> {
    check_base(base)?;
    let method = match method {
        Some(m) => m,
        None => target.default_method()?,
    };
    let position_digits = ((n + 1) as f64 * (base as f64).log10()).ceil() as i64;
    let mut fraction = String::new();
    for extra in [0, RETRY_DIGITS] {
        let need = position_digits + (SAFETY_DIGITS + extra) as i64;
        let spec = select_index(method, target, need, max_index)?;
        let (result, frac) = attempt(numbers, &spec, target, n, base)?;
        if let Some(r) = result {
            return Ok(r);
        }
        fraction = frac;
    }
    Err(Error::BoundaryHazard {
        position: n,
        base,
        fraction,
    })
}

/// Fractional position of the `k`-th significant digit (1-based) of `target`.
pub fn significant_position(target: Target, k: u64, base: u32) -> Result<u64> {
    check_base(base)?;
    let reference = oracle::reference(target.constant(), 30)?;
    let int = reference.value.floor();
    let int_digits = if int.is_zero() {
        0
    } else {
        int.to_str_radix(base).len() as u64
    };
    if int_digits == 0 || k <= int_digits {
        return Err(Error::domain(format!(
            "significant digit {k} of {target} is not in the fractional part"
        )));
    }
    Ok(k - int_digits - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedDigits {
    pub integer_part: String,
    pub fractional_digits: String,
    pub base: u32,
}

impl fmt::Display for RenderedDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fractional_digits.is_empty() {
            f.write_str(&self.integer_part)
        } else {
            write!(f, "{}.{}", self.integer_part, self.fractional_digits)
        }
    }
}

/// How far a value to render may be from the true one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The value is exact.
    Exact,
    /// The error is at most `base^e`.
    ErrorLogBase(i64),
}

/// The base-`base` expansion of `x >= 0` truncated to `count` fractional
/// digits, guaranteed to be the digits of any value within the certified
/// error of `x`.
pub fn render(x: &ArbReal, base: u32, count: u64, certification: Certification) -> Result<RenderedDigits> {
    check_base(base)?;
    if x.is_negative() {
        return Err(Error::domain("render of a negative value"));
    }
    let (num, exp) = x.to_dyadic();
    let b = BigInt::from(base);
    let (lo, hi) = match certification {
        Certification::Exact => {
            let scaled = num * num_traits::pow(b.clone(), count as usize);
            let v = if exp >= 0 {
                scaled << exp as u64
            } else {
                scaled >> (-exp) as u64
            };
            (v.clone(), v)
        }
        Certification::ErrorLogBase(e) => {
            let margin = -e - count as i64;
            if e >= 0 || margin < 2 {
                return Err(Error::precision(format!(
                    "{count} digits exceed the certified error base^{e}"
                )));
            }
            // floor((x b^(count+margin) +- 1) / b^margin)
            let k = margin as usize;
            let frac_bits = (-exp).max(0) as u64;
            let mut m = num * num_traits::pow(b.clone(), count as usize + k);
            if exp > 0 {
                m <<= exp as u64;
            }
            let unit = BigInt::one() << frac_bits;
            let den = (BigInt::one() << frac_bits) * num_traits::pow(b.clone(), k);
            ((&m - &unit).div_floor(&den), (&m + &unit).div_floor(&den))
        }
    };
    if lo != hi {
        return Err(Error::BoundaryHazard {
            position: count,
            base,
            fraction: format!("{:e}", x.to_f64()),
        });
    }
    let (int, frac) = lo.div_mod_floor(&num_traits::pow(b, count as usize));
    let mut fractional_digits = if count == 0 {
        String::new()
    } else {
        frac.to_str_radix(base)
    };
    while (fractional_digits.len() as u64) < count {
        fractional_digits.insert(0, '0');
    }
    Ok(RenderedDigits {
        integer_part: int.to_str_radix(base),
        fractional_digits,
        base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::pi_value;

    #[test]
    fn position_examples() {
        let pi = pi_value(256).unwrap();
        assert_eq!(position(0, &pi, 10).unwrap(), 1);
        assert_eq!(position(3, &pi, 10).unwrap(), 5);
        let half = ArbReal::from_ratio(&1.into(), &2.into(), 256).unwrap();
        assert_eq!(position(5, &half, 10).unwrap(), 0);
        assert_eq!(position(0, &half, 2).unwrap(), 1);
        assert!(matches!(position(60, &pi, 10), Err(Error::Precision(_))));
    }

    #[test]
    fn render_examples() {
        let pi = pi_value(128).unwrap();
        let r = render(&pi, 10, 10, Certification::ErrorLogBase(-30)).unwrap();
        assert_eq!(r.integer_part, "3");
        assert_eq!(r.fractional_digits, "1415926535");
        let two = ArbReal::from_u64(2, 8);
        assert_eq!(render(&two, 2, 4, Certification::Exact).unwrap().to_string(), "10.0000");
        let short = pi_value(64).unwrap();
        assert!(matches!(
            render(&short, 10, 25, Certification::ErrorLogBase(-15)),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn render_detects_boundary() {
        // 0.19999999999 with error 1e-12 cannot certify 12 digits of 0.1999...
        let x = ArbReal::from_ratio(&BigInt::from(199_999_999_999i64), &BigInt::from(10i64.pow(12)), 128).unwrap();
        assert!(render(&x, 10, 10, Certification::ErrorLogBase(-12)).is_ok());
        // 0.2 +- 1e-3 straddles the boundary between 0.1 and 0.2
        let y = ArbReal::from_ratio(&BigInt::from(2), &BigInt::from(10), 128).unwrap();
        assert!(matches!(
            render(&y, 10, 1, Certification::ErrorLogBase(-3)),
            Err(Error::BoundaryHazard { .. })
        ));
    }

    #[test]
    fn targets_parse() {
        assert_eq!("pi".parse::<Target>().unwrap(), Target::Pi);
        assert_eq!("pi-power 1000".parse::<Target>().unwrap(), Target::PiPower(1000));
        assert_eq!("pi-power:7".parse::<Target>().unwrap(), Target::PiPower(7));
        assert!("pi-power 0".parse::<Target>().is_err());
        assert!("tau".parse::<Target>().is_err());
        assert!(Target::PiPower(4).default_method().is_err());
    }

    #[test]
    fn first_digits_of_pi() {
        let s = SpecialNumbers::new();
        let decimals = [1, 4, 1, 5, 9, 2, 6, 5, 3, 5];
        for (n, d) in decimals.iter().enumerate() {
            let r = digit_of(&s, Target::Pi, n as u64, 10, None).unwrap();
            assert_eq!(r.digit, *d, "position {n}");
            assert!(r.stable);
        }
    }

    #[test]
    fn method_must_match_target() {
        let s = SpecialNumbers::new();
        assert!(digit_of(&s, Target::Pi, 3, 10, Some(MethodId::RatioEulerSq)).is_err());
        assert!(digit_of(&s, Target::PiPower(12), 3, 10, Some(MethodId::EulerBasic)).is_err());
        let r = digit_of(&s, Target::PiSquared, 1, 10, None).unwrap();
        assert_eq!(r.digit, 6); // 9.869...
    }

    #[test]
    fn significant_digit_positions() {
        assert_eq!(significant_position(Target::Pi, 2, 10).unwrap(), 0);
        // pi^1000 has 498 integer digits
        assert_eq!(significant_position(Target::PiPower(1000), 1000, 10).unwrap(), 501);
        assert!(significant_position(Target::InvPi, 3, 10).is_err());
    }
}
