//! Roots, powers, logarithm and exponential on [`ArbReal`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::One;

use super::real::ArbReal;
use crate::error::{Error, Result};

fn bit_length(k: u64) -> u64 {
    (64 - k.leading_zeros()) as u64
}

impl ArbReal {
    /// `self^k` by square-and-multiply, at the precision of `self`.
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        let p = self.precision();
        if k == 0 {
            return Ok(Self::one(p));
        }
        if self.is_zero() {
            return if k < 0 {
                Err(Error::domain("zero to a negative power"))
            } else {
                Ok(Self::zero(p))
            };
        }
        let n = k.unsigned_abs();
        let w = p + 2 * bit_length(n) + 8;
        let mut acc = self.pow_at(n, w);
        if k < 0 {
            acc = Self::one(w).div(&acc, w)?;
        }
        Ok(acc.with_precision(p))
    }

    pub(crate) fn pow_at(&self, mut n: u64, w: u64) -> Self {
        let mut base = self.with_precision(w.max(self.precision()));
        let mut acc: Option<Self> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base, w),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, w);
            }
        }
        acc.unwrap_or_else(|| Self::one(w)).with_precision(w)
    }

    /// Correctly rounded square root.
    pub fn sqrt(&self) -> Result<Self> {
        let p = self.precision();
        if self.is_negative() {
            return Err(Error::domain("square root of a negative value"));
        }
        if self.is_zero() {
            return Ok(Self::zero(p));
        }
        let m = self.mantissa();
        let target = 2 * (p + 2);
        let mut shift = target.saturating_sub(m.bits());
        if (self.exponent() - shift as i64).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = m << shift;
        let root = scaled.sqrt();
        let sticky = &root * &root != scaled;
        Ok(Self::round_parts(
            Sign::Plus,
            root,
            (self.exponent() - shift as i64) / 2,
            sticky,
            p,
        ))
    }

    /// Correctly rounded `k`-th root of a positive value.
    ///
    /// Newton iteration runs on the floating representation with a doubling
    /// precision ladder; the rounded candidate is then accepted only once the
    /// `k`-th powers of the midpoints to both neighbouring candidates bracket
    /// `self`.
    pub fn nth_root(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("zeroth root"));
        }
        if !self.is_positive() {
            return Err(Error::domain("root of a non-positive value"));
        }
        match k {
            1 => return Ok(self.clone()),
            2 => return self.sqrt(),
            _ => {}
        }
        let p = self.precision();
        let kb = bit_length(k);
        let w = p + 2 * kb + 24;

        let l2 = self.log2_abs() / k as f64;
        let e = l2.floor();
        let mut y = Self::from_f64((l2 - e).exp2(), 64)?.mul_pow2(e as i64);

        let mut ladder = vec![w];
        while *ladder.last().unwrap() > 48 {
            let next = ladder.last().unwrap() / 2 + 1;
            ladder.push(next);
        }
        ladder.reverse();
        for &prec in &ladder {
            y = newton_root_step(&y, self, k, prec)?;
        }
        y = newton_root_step(&y, self, k, w)?;

        let mut candidate = y.with_precision(p);
        for _ in 0..8 {
            let (lo_mid, hi_mid) = midpoints(&candidate);
            if compare_power(&lo_mid, k, self, w) == Ordering::Greater {
                candidate = step_down(&candidate);
                continue;
            }
            if compare_power(&hi_mid, k, self, w) == Ordering::Less {
                candidate = step_up(&candidate);
                continue;
            }
            return Ok(candidate);
        }
        Err(Error::Consistency(format!(
            "nth_root({k}) failed to bracket at {p} bits"
        )))
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::domain("logarithm of a non-positive value"));
        }
        let p = self.precision();
        let one = Self::one(p);
        if self.cmp_value(&one) == Ordering::Equal {
            return Ok(Self::zero(p));
        }
        // self = f * 2^t with f in [1/sqrt2, sqrt2)
        let mut t = self.top_exponent().unwrap() - 1;
        let mut f = self.mul_pow2(-t);
        if f.to_f64() > std::f64::consts::SQRT_2 {
            f = f.mul_pow2(-1);
            t += 1;
        }
        let near_one = f
            .sub(&one, p + 64)
            .top_exponent()
            .is_none_or(|e| e < -((p as f64).sqrt() as i64) / 2);
        let r = if near_one {
            0
        } else {
            ((p as f64).sqrt() / 2.0) as u64
        };
        let w = p + 40 + r + bit_length(t.unsigned_abs());
        let mut f = f.with_precision(w);
        for _ in 0..r {
            f = f.sqrt()?;
        }
        let one_w = Self::one(w);
        let z = f.sub(&one_w, w).div(&f.add(&one_w, w), w)?;
        let mut ln_f = atanh_series(&z, w)?.mul_pow2(1 + r as i64);
        if t != 0 {
            let ln2 = ln2(w);
            ln_f = ln_f.add(&ln2.mul_int(&BigInt::from(t), w), w);
        }
        Ok(ln_f.with_precision(p))
    }

    /// Exponential. Fails with a range error when the result exponent would
    /// leave the signed 64-bit range.
    pub fn exp(&self) -> Result<Self> {
        let p = self.precision();
        if self.is_zero() {
            return Ok(Self::one(p));
        }
        let top = self.top_exponent().unwrap();
        if top > 60 {
            return Err(Error::Range(format!("exp argument near 2^{top}")));
        }
        let s = ((p as f64).sqrt() / 2.0) as u64;
        let w = p + 40 + s + top.max(0) as u64;
        let ln2_wide = ln2(w + top.max(0) as u64 + 8);
        let k = self
            .div(&ln2_wide, 64 + top.max(0) as u64)?
            .add(&Self::from_f64(0.5, 8)?, 64 + top.max(0) as u64)
            .floor();
        let wide = w + top.max(0) as u64 + 8;
        let r = self
            .with_precision(wide)
            .sub(&ln2_wide.mul_int(&k, wide), wide)
            .with_precision(w)
            .mul_pow2(-(s as i64));
        let one = Self::one(w);
        let mut sum = one.clone();
        let mut term = one;
        let mut j = 1u64;
        loop {
            term = term.mul(&r, w).div_u64(j, w)?;
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term, w);
            if term.top_exponent().unwrap() < sum.top_exponent().unwrap() - w as i64 - 2 {
                break;
            }
            j += 1;
        }
        for _ in 0..s {
            sum = sum.mul(&sum, w);
        }
        let k: i64 = k
            .try_into()
            .map_err(|_| Error::Range("exp scale exponent".into()))?;
        Ok(sum.mul_pow2(k).with_precision(p))
    }
}

fn newton_root_step(y: &ArbReal, x: &ArbReal, k: u64, prec: u64) -> Result<ArbReal> {
    // y <- ((k-1) y + x / y^(k-1)) / k
    let y = y.with_precision(prec);
    let t = y.pow_at(k - 1, prec + 2 * bit_length(k));
    let q = x.with_precision(prec.max(x.precision())).div(&t, prec)?;
    y.mul_u64(k - 1, prec + 8)
        .add(&q, prec + 8)
        .div_u64(k, prec)
}

/// Decides the sign of `base^k - x`, raising the working precision until the
/// computed difference clears the powering error bound.
fn compare_power(base: &ArbReal, k: u64, x: &ArbReal, start: u64) -> Ordering {
    let mut w = start.max(x.precision() + 2 * bit_length(k) + 16);
    for _ in 0..4 {
        let pw = base.pow_at(k, w);
        let diff = pw.sub(x, w + 64);
        if diff.is_zero() {
            w *= 2;
            continue;
        }
        // pw carries a relative error below 2k * 2^-w
        let rel = diff.log2_abs() - x.log2_abs();
        if rel > ((2 * k) as f64).log2() - w as f64 + 2.0 {
            return diff.cmp_value(&ArbReal::zero(2));
        }
        w *= 2;
    }
    Ordering::Equal
}

fn midpoints(c: &ArbReal) -> (ArbReal, ArbReal) {
    let (m, e) = c.to_dyadic();
    let p = c.precision();
    let two_m = &m << 1u32;
    let hi = ArbReal::from_dyadic(&(&two_m + 1), e - 1, p + 2);
    let is_power_of_two = m.magnitude() == &(BigUint::one() << (p - 1));
    let lo = if is_power_of_two {
        ArbReal::from_dyadic(&((&m << 2u32) - 1), e - 2, p + 3)
    } else {
        ArbReal::from_dyadic(&(two_m - 1), e - 1, p + 2)
    };
    (lo, hi)
}

fn step_up(c: &ArbReal) -> ArbReal {
    let (m, e) = c.to_dyadic();
    ArbReal::from_dyadic(&(m + 1), e, c.precision())
}

fn step_down(c: &ArbReal) -> ArbReal {
    let (m, e) = c.to_dyadic();
    let p = c.precision();
    if m.magnitude() == &(BigUint::one() << (p - 1)) {
        ArbReal::from_dyadic(&((m << 1u32) - 1), e - 1, p)
    } else {
        ArbReal::from_dyadic(&(m - 1), e, p)
    }
}

/// `atanh(z) = z + z^3/3 + z^5/5 + ...` for small `|z|`.
fn atanh_series(z: &ArbReal, w: u64) -> Result<ArbReal> {
    if z.is_zero() {
        return Ok(ArbReal::zero(w));
    }
    let z2 = z.mul(z, w);
    let mut power = z.with_precision(w);
    let mut sum = power.clone();
    let mut j = 1u64;
    loop {
        power = power.mul(&z2, w);
        if power.is_zero() {
            break;
        }
        let term = power.div_u64(2 * j + 1, w)?;
        sum = sum.add(&term, w);
        if term.top_exponent().unwrap() < sum.top_exponent().unwrap() - w as i64 - 2 {
            break;
        }
        j += 1;
    }
    Ok(sum)
}

const LN2_RUNG: u64 = 1024;

/// ln 2 at `w` bits, always derived from the same 1024-bit rung so the
/// result depends only on `w`.
pub(crate) fn ln2(w: u64) -> ArbReal {
    static CACHE: OnceLock<Mutex<HashMap<u64, ArbReal>>> = OnceLock::new();
    let rung = (w + 64).div_ceil(LN2_RUNG) * LN2_RUNG;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&rung) {
        return v.with_precision(w);
    }
    let third = ArbReal::from_ratio(&BigInt::one(), &BigInt::from(3), rung + 16).unwrap();
    let value = atanh_series(&third, rung + 16)
        .unwrap()
        .mul_pow2(1)
        .with_precision(rung);
    cache.lock().unwrap().insert(rung, value.clone());
    value.with_precision(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::real::relative_error_log2;

    fn n(v: u64, p: u64) -> ArbReal {
        ArbReal::from_u64(v, p)
    }

    fn digits(x: &ArbReal, d: u32) -> String {
        x.mul(&ArbReal::from_biguint(&BigUint::from(10u32).pow(d), 64), x.precision() + 64)
            .floor()
            .to_string()
    }

    #[test]
    fn pow_int_cases() {
        assert_eq!(n(2, 64).pow_int(10).unwrap(), n(1024, 64));
        assert_eq!(n(7, 64).pow_int(0).unwrap(), ArbReal::one(64));
        assert!(ArbReal::zero(64).pow_int(-1).is_err());
        let half = n(2, 64).pow_int(-1).unwrap();
        assert_eq!(half.to_f64(), 0.5);
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(n(4, 64).sqrt().unwrap(), n(2, 64));
        assert!(ArbReal::zero(64).sqrt().unwrap().is_zero());
        assert!(n(1, 64).neg().sqrt().is_err());
        // sqrt(6) = 2.449489742783178 (Newton desk oracle, 15 digits)
        assert_eq!(digits(&n(6, 128).sqrt().unwrap(), 15), "2449489742783178");
        let s2 = n(2, 256).sqrt().unwrap();
        let sq = s2.mul(&s2, 256);
        assert!(relative_error_log2(&sq, &n(2, 256)) <= -(256.0 - 4.0));
    }

    #[test]
    fn nth_root_cases() {
        assert_eq!(n(4, 64).nth_root(2).unwrap(), n(2, 64));
        for k in [1, 3, 7, 100] {
            assert_eq!(n(1, 64).nth_root(k).unwrap(), ArbReal::one(64));
        }
        assert_eq!(n(1024, 64).nth_root(10).unwrap(), n(2, 64));
        assert!(n(4, 64).nth_root(0).is_err());
        assert!(ArbReal::zero(64).nth_root(3).is_err());
        // 93555^(1/10) = 3.14128036939737141020... (50-digit desk value)
        let r = n(93555, 128).nth_root(10).unwrap();
        assert_eq!(digits(&r, 20), "314128036939737141020");
    }

    #[test]
    fn ln_cases() {
        assert!(ArbReal::one(64).ln().unwrap().is_zero());
        assert!(ArbReal::zero(64).ln().is_err());
        // ln 2 = 0.69314718055994530941 (known constant, 20 digits)
        assert_eq!(digits(&n(2, 128).ln().unwrap(), 20), "69314718055994530941");
        // near one, both sides
        let tiny = 2f64.powi(-40);
        let x = ArbReal::one(128).add(&ArbReal::from_f64(tiny, 64).unwrap(), 128);
        assert!((x.ln().unwrap().to_f64() - tiny.ln_1p()).abs() < 1e-28);
        let y = ArbReal::from_f64(0.75, 128).unwrap();
        assert!((y.ln().unwrap().to_f64() - 0.75f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn exp_cases() {
        assert_eq!(ArbReal::zero(64).exp().unwrap(), ArbReal::one(64));
        // e = 2.71828182845904523536 (Taylor series desk oracle)
        assert_eq!(digits(&ArbReal::one(128).exp().unwrap(), 20), "271828182845904523536");
        let ten = n(10, 256);
        let back = ten.ln().unwrap().exp().unwrap();
        assert!(relative_error_log2(&back, &ten) <= -(256.0 - 8.0));
        let e = ArbReal::one(256).exp().unwrap();
        let one = e.ln().unwrap();
        assert!(one.sub(&ArbReal::one(256), 512).log2_abs() <= -240.0);
        assert!(ArbReal::one(64).mul_pow2(62).exp().is_err());
        let neg = n(3, 128).neg().exp().unwrap();
        assert!((neg.to_f64() - (-3f64).exp()).abs() < 1e-17);
    }

    #[test]
    fn large_exp_argument() {
        // exp(2000) = 10^868.588963806503655...
        let v = n(2000, 128).exp().unwrap();
        let l10 = v.log10_abs();
        assert!((l10 - 868.588_963_806_503_7).abs() < 1e-9, "{l10}");
    }
}
