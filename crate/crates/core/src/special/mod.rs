//! Exact special sequences: Bernoulli and Euler numbers, factorials,
//! partition numbers and central binomial coefficients.
//!
//! Bernoulli and Euler numbers share one boustrophedon triangle. The triangle
//! and the partition table grow on demand behind a lock held by the single
//! writer; readers take shared access to the completed prefix.

mod cache;
mod combinatorics;
mod partition;
mod zigzag;

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use cache::{cache_load, cache_store, SequenceCache, SequenceKind};
pub use combinatorics::primes_up_to;

use crate::error::{Error, Result};
use partition::PartitionTable;
use zigzag::ZigzagTable;

pub type ExactInteger = BigInt;
pub type ExactRational = BigRational;

#[derive(Debug)]
pub struct SpecialNumbers {
    zigzag: RwLock<ZigzagTable>,
    partitions: RwLock<PartitionTable>,
    preloaded: RwLock<Vec<SequenceCache>>,
}

impl Default for SpecialNumbers {
    fn default() -> Self {
        Self::new()
    }
}

impl SpecialNumbers {
    pub fn new() -> Self {
        SpecialNumbers {
            zigzag: RwLock::new(ZigzagTable::new()),
            partitions: RwLock::new(PartitionTable::new()),
            preloaded: RwLock::new(Vec::new()),
        }
    }

    /// Process-wide shared generator.
    pub fn global() -> &'static SpecialNumbers {
        static GLOBAL: OnceLock<SpecialNumbers> = OnceLock::new();
        GLOBAL.get_or_init(SpecialNumbers::new)
    }

    /// Serves values from a verified cache instead of regenerating them.
    pub fn preload(&self, cache: SequenceCache) {
        if cache.kind == SequenceKind::Partition {
            let values = cache.records.iter().map(|r| r.numer().clone()).collect();
            self.partitions.write().unwrap().seed(values);
            return;
        }
        let mut pre = self.preloaded.write().unwrap();
        pre.retain(|c| c.kind != cache.kind);
        pre.push(cache);
    }

    fn preloaded_value(&self, kind: SequenceKind, index: u64) -> Option<ExactRational> {
        self.preloaded
            .read()
            .unwrap()
            .iter()
            .find(|c| c.kind == kind)
            .and_then(|c| c.get(index).cloned())
    }

    /// Grows the shared triangle through zigzag index `n`.
    pub fn ensure_zigzag(&self, n: u64) {
        if self.zigzag.read().unwrap().max_index() as u64 >= n {
            return;
        }
        self.zigzag.write().unwrap().extend_to(n as usize);
    }

    /// Makes `bernoulli(k)` and `euler(k)` lock-free lookups for all `k <= max_index`.
    pub fn ensure_index(&self, max_index: u64) {
        self.ensure_zigzag(max_index);
    }

    pub fn ensure_partitions(&self, n: u64) {
        if self.partitions.read().unwrap().len() as u64 > n {
            return;
        }
        self.partitions.write().unwrap().extend_to(n as usize);
    }

    /// The zigzag (alternating permutation) number `A_n`.
    pub fn zigzag(&self, n: u64) -> BigUint {
        self.ensure_zigzag(n);
        (*self.zigzag.read().unwrap().get(n as usize).unwrap()).clone()
    }

    /// Signed `B_k` for even `k` (and the conventional `B_1 = -1/2`).
    pub fn bernoulli(&self, k: u64) -> Result<ExactRational> {
        match k {
            0 => return Ok(ExactRational::one()),
            1 => return Ok(ExactRational::new((-1).into(), 2.into())),
            _ if k % 2 == 1 => {
                return Err(Error::domain(format!("odd Bernoulli index {k}")));
            }
            _ => {}
        }
        if let Some(v) = self.preloaded_value(SequenceKind::Bernoulli, k) {
            return Ok(v);
        }
        // B_k = (-1)^(k/2 - 1) k A_{k-1} / (2^k (2^k - 1))
        let tangent = BigInt::from(self.zigzag(k - 1));
        let pow = BigInt::one() << k as usize;
        let mut value = ExactRational::new(tangent * k, &pow * (&pow - 1u32));
        if (k / 2).is_multiple_of(2) {
            value = -value;
        }
        Ok(value)
    }

    /// Signed `E_k` for even `k`.
    pub fn euler(&self, k: u64) -> Result<ExactInteger> {
        if k % 2 == 1 {
            return Err(Error::domain(format!("odd Euler index {k}")));
        }
        if let Some(v) = self.preloaded_value(SequenceKind::Euler, k) {
            return Ok(v.numer().clone());
        }
        let secant = BigInt::from(self.zigzag(k));
        Ok(if (k / 2) % 2 == 1 { -secant } else { secant })
    }

    pub fn partition(&self, n: u64) -> ExactInteger {
        self.ensure_partitions(n);
        self.partitions
            .read()
            .unwrap()
            .get(n as usize)
            .unwrap()
            .clone()
    }
}

pub fn bernoulli(k: u64) -> Result<ExactRational> {
    SpecialNumbers::global().bernoulli(k)
}

pub fn euler(k: u64) -> Result<ExactInteger> {
    SpecialNumbers::global().euler(k)
}

pub fn partition(n: u64) -> ExactInteger {
    SpecialNumbers::global().partition(n)
}

pub fn factorial_exact(n: u64) -> ExactInteger {
    combinatorics::factorial_exact(n).into()
}

/// `C(2n, n)`.
pub fn central_binomial(n: u64) -> ExactInteger {
    combinatorics::central_binomial(n).into()
}

/// Product of the primes `p` with `(p - 1) | k`: the denominator of `B_k`
/// for even `k >= 2`.
pub fn staudt_clausen_denominator(k: u64) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut d = BigInt::one();
    for p in primes_up_to(k + 1) {
        if k.is_multiple_of(p - 1) {
            d *= p;
        }
    }
    d
}

/// `true` when every value's sign matches the expected alternation.
pub fn signs_alternate(numbers: &SpecialNumbers, max_index: u64) -> Result<bool> {
    for k in (2..=max_index).step_by(2) {
        let b = numbers.bernoulli(k)?;
        let e = numbers.euler(k)?;
        let b_pos = (k / 2) % 2 == 1;
        let e_pos = (k / 2) % 2 == 0;
        if (b.numer() > &BigInt::zero()) != b_pos || (e > BigInt::zero()) != e_pos {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_examples() {
        let s = SpecialNumbers::new();
        assert_eq!(s.bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(s.bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(s.bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(s.bernoulli(10).unwrap(), q(5, 66));
        assert_eq!(s.bernoulli(12).unwrap(), q(-691, 2730));
        assert_eq!(s.bernoulli(20).unwrap(), q(-174611, 330));
        assert_eq!(s.bernoulli(22).unwrap(), q(854513, 138));
        assert!(s.bernoulli(3).is_err());
    }

    #[test]
    fn euler_examples() {
        let s = SpecialNumbers::new();
        assert_eq!(s.euler(0).unwrap(), 1.into());
        assert_eq!(s.euler(2).unwrap(), (-1).into());
        assert_eq!(s.euler(4).unwrap(), 5.into());
        assert_eq!(s.euler(10).unwrap(), (-50521).into());
        assert_eq!(s.euler(12).unwrap(), 2702765.into());
        assert!(s.euler(5).is_err());
    }

    #[test]
    fn partitions_and_binomials() {
        assert_eq!(partition(0), 1.into());
        assert_eq!(partition(5), 7.into());
        assert_eq!(partition(100), 190569292.into());
        assert_eq!(central_binomial(10), 184756.into());
        assert_eq!(factorial_exact(2000).to_string().len(), 5736);
    }

    #[test]
    fn staudt_clausen_small() {
        assert_eq!(staudt_clausen_denominator(2), 6.into());
        assert_eq!(staudt_clausen_denominator(12), 2730.into());
        for k in (2..=60).step_by(2) {
            let b = bernoulli(k).unwrap();
            assert_eq!(b.denom(), &staudt_clausen_denominator(k), "B_{k}");
        }
    }

    #[test]
    fn alternation() {
        assert!(signs_alternate(&SpecialNumbers::new(), 80).unwrap());
    }

    #[test]
    fn preloaded_values_are_served() {
        let s = SpecialNumbers::new();
        let mut c = SequenceCache::build(&s, SequenceKind::Euler, 6).unwrap();
        c.records[3] = ExactRational::from_integer(7.into());
        let t = SpecialNumbers::new();
        t.preload(c);
        assert_eq!(t.euler(6).unwrap(), 7.into());
        assert_eq!(t.euler(8).unwrap(), 1385.into());
    }
}
