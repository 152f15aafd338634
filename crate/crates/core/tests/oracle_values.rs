mod common;

use df_core::digits::{render, Certification};
use df_core::precision::ArbReal;
use df_core::special::{self, SequenceCache, SequenceKind, SpecialNumbers};
use num_bigint::BigInt;

#[test]
fn bernoulli_matches_recurrence_through_100() {
    let numbers = SpecialNumbers::new();
    let oracle = common::bernoulli_by_recurrence(100);
    for k in (0..=100).step_by(2) {
        assert_eq!(numbers.bernoulli(k as u64).unwrap(), oracle[k], "B_{k}");
    }
    assert_eq!(numbers.bernoulli(1).unwrap(), oracle[1]);
}

#[test]
fn euler_matches_recurrence_through_100() {
    let numbers = SpecialNumbers::new();
    let oracle = common::euler_by_recurrence(100);
    for k in (0..=100).step_by(2) {
        assert_eq!(numbers.euler(k as u64).unwrap(), oracle[k], "E_{k}");
    }
}

#[test]
fn partitions_match_enumeration_through_40() {
    let numbers = SpecialNumbers::new();
    for n in 0..=40u64 {
        assert_eq!(numbers.partition(n), BigInt::from(common::partitions_enumerated(n, n)), "p({n})");
    }
}

#[test]
fn central_binomial_matches_pascal() {
    for n in 0..=60 {
        assert_eq!(special::central_binomial(n as u64), common::central_binomial_pascal(n));
    }
}

#[test]
fn staudt_clausen_through_200() {
    let numbers = SpecialNumbers::new();
    for k in (2..=200u64).step_by(2) {
        let b = numbers.bernoulli(k).unwrap();
        assert!(common::staudt_clausen_holds(k, &b), "B_{k}");
        assert_eq!(b.denom(), &special::staudt_clausen_denominator(k));
    }
}

#[test]
fn exact_rational_renders_like_long_division() {
    for (num, den) in [(355u64, 113u64), (22, 7), (1, 3), (104348, 33215)] {
        let x = ArbReal::from_ratio(&BigInt::from(num), &BigInt::from(den), 800).unwrap();
        // 800 bits carry about 240 correct digits
        let got = render(&x, 10, 200, Certification::ErrorLogBase(-235)).unwrap();
        assert_eq!(got.to_string(), common::long_division(num, den, 200));
    }
}

#[test]
fn caches_round_trip_and_match_generators() {
    let numbers = SpecialNumbers::new();
    for kind in SequenceKind::ALL {
        let cache = SequenceCache::build(&numbers, kind, 400).unwrap();
        let text = cache.to_text();
        assert_eq!(SequenceCache::parse(&text).unwrap(), cache);
        let fresh = SpecialNumbers::new();
        fresh.preload(cache.clone());
        for (i, value) in cache.records.iter().enumerate() {
            let k = cache.index_of(i);
            let served = match kind {
                SequenceKind::Bernoulli => fresh.bernoulli(k).unwrap(),
                SequenceKind::Euler => fresh.euler(k).unwrap().into(),
                SequenceKind::Partition => fresh.partition(k).into(),
            };
            assert_eq!(&served, value, "{kind:?} {k}");
        }
    }
}
