use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working-precision budget for a request of `target_digits` digits in `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub target_digits: u64,
    pub guard_bits: u64,
    pub base: u32,
}

pub const MIN_GUARD_BITS: u64 = 64;

impl PrecisionPolicy {
    /// Guard bits are `max(64, ceil(10% of the digit bits))`.
    pub fn new(target_digits: u64, base: u32) -> Result<Self> {
        check_base(base)?;
        let digit_bits = digit_bits(target_digits, base);
        let guard_bits = MIN_GUARD_BITS.max((0.1 * digit_bits as f64).ceil() as u64);
        Ok(PrecisionPolicy {
            target_digits,
            guard_bits,
            base,
        })
    }

    pub fn with_guard_bits(mut self, guard_bits: u64) -> Self {
        self.guard_bits = guard_bits.max(MIN_GUARD_BITS);
        self
    }

    pub fn working_bits(&self) -> u64 {
        digit_bits(self.target_digits, self.base) + self.guard_bits
    }
}

pub fn check_base(base: u32) -> Result<()> {
    if (2..=36).contains(&base) {
        Ok(())
    } else {
        Err(Error::domain(format!("base {base} outside 2..=36")))
    }
}

/// `ceil(digits * log2(base))`.
pub fn digit_bits(digits: u64, base: u32) -> u64 {
    if base.is_power_of_two() {
        digits * base.trailing_zeros() as u64
    } else {
        (digits as f64 * (base as f64).log2()).ceil() as u64
    }
}

/// Bits needed to hold `digits` decimal digits.
pub fn decimal_bits(digits: u64) -> u64 {
    digit_bits(digits, 10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn working_bits_rule() {
        let p = PrecisionPolicy::new(100, 10).unwrap();
        assert_eq!(p.guard_bits, 64);
        assert_eq!(p.working_bits(), 333 + 64);
        let big = PrecisionPolicy::new(10_000, 10).unwrap();
        assert_eq!(big.guard_bits, 3322);
        assert_eq!(big.working_bits(), 33220 + 3322);
        let bin = PrecisionPolicy::new(1000, 2).unwrap();
        assert_eq!(bin.working_bits(), 1000 + 100);
        assert!(PrecisionPolicy::new(10, 37).is_err());
        assert!(PrecisionPolicy::new(10, 1).is_err());
        assert_eq!(p.with_guard_bits(10).guard_bits, 64);
    }
}
