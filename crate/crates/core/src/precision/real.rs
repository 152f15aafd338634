//! Binary floating-point values with an unbounded mantissa.
//!
//! A nonzero value is `sign * mantissa * 2^exponent` with the mantissa holding
//! exactly `precision` bits. Every operation rounds to nearest, ties to even.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArbReal {
    sign: Sign,
    mantissa: BigUint,
    exponent: i64,
    precision: u64,
}

pub(crate) const MIN_PRECISION: u64 = 2;

fn bits_i64(m: &BigUint) -> i64 {
    m.bits() as i64
}

/// Returns true when any of the low `count` bits of `m` is set.
fn low_bits_nonzero(m: &BigUint, count: u64) -> bool {
    if count == 0 {
        return false;
    }
    match m.trailing_zeros() {
        Some(tz) => tz < count,
        None => false,
    }
}

impl ArbReal {
    pub fn zero(precision: u64) -> Self {
        ArbReal {
            sign: Sign::NoSign,
            mantissa: BigUint::zero(),
            exponent: 0,
            precision: precision.max(MIN_PRECISION),
        }
    }

    pub fn one(precision: u64) -> Self {
        Self::from_u64(1, precision)
    }

    /// Rounds `sign * mantissa * 2^exponent` (plus a sticky fraction below the
    /// last mantissa bit when `sticky` is set) to `precision` bits.
    ///
    /// When `sticky` is set the mantissa must carry at least `precision + 2`
    /// bits so that the rounding decision is exact.
    pub(crate) fn round_parts(
        sign: Sign,
        mantissa: BigUint,
        exponent: i64,
        sticky: bool,
        precision: u64,
    ) -> Self {
        let precision = precision.max(MIN_PRECISION);
        if mantissa.is_zero() || sign == Sign::NoSign {
            return Self::zero(precision);
        }
        let bits = mantissa.bits();
        if bits <= precision {
            debug_assert!(!sticky, "sticky rounding needs guard bits");
            let shift = precision - bits;
            return ArbReal {
                sign,
                mantissa: mantissa << shift,
                exponent: exponent - shift as i64,
                precision,
            };
        }
        let shift = bits - precision;
        let mut kept = &mantissa >> shift;
        let half = mantissa.bit(shift - 1);
        let rest = sticky || low_bits_nonzero(&mantissa, shift - 1);
        let mut exponent = exponent + shift as i64;
        if half && (rest || kept.bit(0)) {
            kept += 1u32;
            if kept.bits() > precision {
                kept >>= 1u32;
                exponent += 1;
            }
        }
        ArbReal {
            sign,
            mantissa: kept,
            exponent,
            precision,
        }
    }

    pub fn from_u64(value: u64, precision: u64) -> Self {
        Self::from_biguint(&BigUint::from(value), precision)
    }

    pub fn from_i64(value: i64, precision: u64) -> Self {
        Self::from_bigint(&BigInt::from(value), precision)
    }

    pub fn from_biguint(value: &BigUint, precision: u64) -> Self {
        Self::round_parts(Sign::Plus, value.clone(), 0, false, precision)
    }

    pub fn from_bigint(value: &BigInt, precision: u64) -> Self {
        Self::round_parts(value.sign(), value.magnitude().clone(), 0, false, precision)
    }

    /// Exact dyadic value `value * 2^exponent`, rounded to `precision`.
    pub fn from_dyadic(value: &BigInt, exponent: i64, precision: u64) -> Self {
        Self::round_parts(
            value.sign(),
            value.magnitude().clone(),
            exponent,
            false,
            precision,
        )
    }

    /// Nearest representable value to a finite `f64`.
    pub fn from_f64(value: f64, precision: u64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain("non-finite f64"));
        }
        if value == 0.0 {
            return Ok(Self::zero(precision));
        }
        let bits = value.abs().to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let sign = if value < 0.0 { Sign::Minus } else { Sign::Plus };
        Ok(Self::round_parts(sign, BigUint::from(mant), exp, false, precision))
    }

    /// Correctly rounded `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        let precision = precision.max(MIN_PRECISION);
        if num.is_zero() {
            return Ok(Self::zero(precision));
        }
        let sign = if num.sign() == den.sign() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let n = num.magnitude();
        let d = den.magnitude();
        let shift = precision as i64 + 2 - (bits_i64(n) - bits_i64(d)) + 1;
        let (q, r) = if shift >= 0 {
            (n << shift as u64).div_rem(d)
        } else {
            n.div_rem(&(d << (-shift) as u64))
        };
        Ok(Self::round_parts(sign, q, -shift, !r.is_zero(), precision))
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::NoSign
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    /// The exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exponent + bits_i64(&self.mantissa))
        }
    }

    /// Exact `(numerator, exponent)` with `self = numerator * 2^exponent`.
    pub fn to_dyadic(&self) -> (BigInt, i64) {
        (
            BigInt::from_biguint(self.sign, self.mantissa.clone()),
            self.exponent,
        )
    }

    pub fn with_precision(&self, precision: u64) -> Self {
        Self::round_parts(
            self.sign,
            self.mantissa.clone(),
            self.exponent,
            false,
            precision,
        )
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.sign = -out.sign;
        out
    }

    pub fn abs(&self) -> Self {
        let mut out = self.clone();
        if out.sign == Sign::Minus {
            out.sign = Sign::Plus;
        }
        out
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.exponent += k;
        }
        out
    }

    pub fn add(&self, other: &Self, precision: u64) -> Self {
        add_signed(self, other, false, precision)
    }

    pub fn sub(&self, other: &Self, precision: u64) -> Self {
        add_signed(self, other, true, precision)
    }

    pub fn mul(&self, other: &Self, precision: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(precision);
        }
        Self::round_parts(
            self.sign * other.sign,
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            false,
            precision,
        )
    }

    pub fn div(&self, other: &Self, precision: u64) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        if self.is_zero() {
            return Ok(Self::zero(precision));
        }
        let precision = precision.max(MIN_PRECISION);
        let shift = (precision as i64 + 3 - bits_i64(&self.mantissa)
            + bits_i64(&other.mantissa))
        .max(0) as u64;
        let (q, r) = (&self.mantissa << shift).div_rem(&other.mantissa);
        Ok(Self::round_parts(
            self.sign * other.sign,
            q,
            self.exponent - shift as i64 - other.exponent,
            !r.is_zero(),
            precision,
        ))
    }

    pub fn mul_u64(&self, k: u64, precision: u64) -> Self {
        if k == 0 || self.is_zero() {
            return Self::zero(precision);
        }
        Self::round_parts(
            self.sign,
            &self.mantissa * k,
            self.exponent,
            false,
            precision,
        )
    }

    pub fn div_u64(&self, k: u64, precision: u64) -> Result<Self> {
        self.div(&Self::from_u64(k, 64), precision)
    }

    pub fn mul_int(&self, k: &BigInt, precision: u64) -> Self {
        self.mul(&Self::from_dyadic(k, 0, k.bits().max(1)), precision)
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        let (num, exp) = self.to_dyadic();
        if exp >= 0 {
            num << exp as u64
        } else {
            num.div_floor(&(BigInt::one() << (-exp) as u64))
        }
    }

    /// `self - floor(self)`, exact.
    pub fn fract(&self) -> Self {
        let (num, exp) = self.to_dyadic();
        if exp >= 0 {
            return Self::zero(self.precision);
        }
        let modulus = BigInt::one() << (-exp) as u64;
        let rem = num.mod_floor(&modulus);
        Self::from_dyadic(&rem, exp, self.precision)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.top_exponent(), other.top_exponent()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => {
                let e = self.exponent.min(other.exponent);
                let a = &self.mantissa << (self.exponent - e) as u64;
                let b = &other.mantissa << (other.exponent - e) as u64;
                a.cmp(&b)
            }
        }
    }

    /// Nearest `f64` (saturating to infinity or zero outside the f64 range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let (top, exp) = if bits > 64 {
            let shift = bits - 64;
            ((&self.mantissa >> shift).to_u64().unwrap(), self.exponent + shift as i64)
        } else {
            (self.mantissa.to_u64().unwrap(), self.exponent)
        };
        let mag = if exp > 1100 {
            f64::INFINITY
        } else if exp < -1200 {
            0.0
        } else {
            let half = (exp / 2) as i32;
            (top as f64) * 2f64.powi(half) * 2f64.powi(exp as i32 - half)
        };
        if self.sign == Sign::Minus {
            -mag
        } else {
            mag
        }
    }

    /// `log2 |self|` as an `f64`, valid far outside the f64 exponent range.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mantissa.bits();
        let take = bits.min(64);
        let top = (&self.mantissa >> (bits - take)).to_u64().unwrap() as f64;
        top.log2() + (self.exponent + (bits - take) as i64) as f64
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() * std::f64::consts::LOG10_2
    }
}

fn add_signed(a: &ArbReal, b: &ArbReal, negate_b: bool, precision: u64) -> ArbReal {
    let b_sign = if negate_b { -b.sign } else { b.sign };
    if b.is_zero() {
        return a.with_precision(precision);
    }
    if a.is_zero() {
        return ArbReal::round_parts(
            b_sign,
            b.mantissa.clone(),
            b.exponent,
            false,
            precision,
        );
    }
    let precision = precision.max(MIN_PRECISION);
    let top_a = a.top_exponent().unwrap();
    let top_b = b.top_exponent().unwrap();
    let (big, big_sign, small, small_sign) = if top_a >= top_b {
        (a, a.sign, b, b_sign)
    } else {
        (b, b_sign, a, a.sign)
    };
    let guard = (precision as i64 + 3 - bits_i64(&big.mantissa)).max(2) as u64;
    let small_top = small.top_exponent().unwrap();
    if small_top <= big.exponent - guard as i64 {
        // The smaller operand lies entirely below the rounding position and
        // only contributes a sticky bit in its direction.
        let shifted = &big.mantissa << guard;
        let mantissa = if big_sign == small_sign {
            shifted
        } else {
            shifted - 1u32
        };
        return ArbReal::round_parts(
            big_sign,
            mantissa,
            big.exponent - guard as i64,
            true,
            precision,
        );
    }
    let e = a.exponent.min(b.exponent);
    let va = BigInt::from_biguint(a.sign, &a.mantissa << (a.exponent - e) as u64);
    let vb = BigInt::from_biguint(b_sign, &b.mantissa << (b.exponent - e) as u64);
    let sum = va + vb;
    ArbReal::round_parts(sum.sign(), sum.magnitude().clone(), e, false, precision)
}

impl PartialOrd for ArbReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl ArbReal {
    /// Total order by numeric value (precision is ignored).
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let rank = |s: Sign| match s {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        match rank(self.sign).cmp(&rank(other.sign)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let ord = self.cmp_abs(other);
        if self.sign == Sign::Minus {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl fmt::Debug for ArbReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ArbReal({}{} * 2^{}, {} bits, ~{:e})",
            if self.sign == Sign::Minus { "-" } else { "" },
            self.mantissa,
            self.exponent,
            self.precision,
            self.to_f64()
        )
    }
}

impl fmt::Display for ArbReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// `|a - b| / |b|` as a log2, used by tests to express ulp-scale bounds.
pub fn relative_error_log2(a: &ArbReal, b: &ArbReal) -> f64 {
    let p = a.precision.max(b.precision) + 64;
    let diff = a.sub(b, p);
    if diff.is_zero() {
        return f64::NEG_INFINITY;
    }
    diff.log2_abs() - b.log2_abs()
}

impl ArbReal {
    /// `true` when the value is an integer.
    pub fn is_integer(&self) -> bool {
        if self.exponent >= 0 || self.is_zero() {
            return true;
        }
        !low_bits_nonzero(&self.mantissa, (-self.exponent) as u64)
    }

}
