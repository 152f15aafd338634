//! Independent reference generators shared by the integration tests. They
//! use textbook definitions and share no code with the library's generators.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row
}

/// `B_0..=B_max` from `sum_{j<=k} C(k+1, j) B_j = 0`.
pub fn bernoulli_by_recurrence(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=max {
        let row = pascal_row(k + 1);
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(row[j].clone()) * bj;
        }
        b.push(-s / BigRational::from_integer(row[k].clone()));
    }
    b
}

/// `E_0..=E_max` from `sum_{j even} C(k, j) E_j = 0` for even `k > 0`.
pub fn euler_by_recurrence(max: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for k in 1..=max {
        if k % 2 == 1 {
            e.push(BigInt::zero());
            continue;
        }
        let row = pascal_row(k);
        let mut s = BigInt::zero();
        for j in (0..k).step_by(2) {
            s += &row[j] * &e[j];
        }
        e.push(-s);
    }
    e
}

/// Number of partitions of `n` with every part at most `largest`, by
/// direct enumeration of the largest part.
pub fn partitions_enumerated(n: u64, largest: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=largest.min(n)).map(|p| partitions_enumerated(n - p, p)).sum()
}

/// `C(2n, n)` read off Pascal's triangle.
pub fn central_binomial_pascal(n: usize) -> BigInt {
    pascal_row(2 * n)[n].clone()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `B_k + sum_{(p-1) | k} 1/p` is an integer for even `k >= 2`.
pub fn staudt_clausen_holds(k: u64, b: &BigRational) -> bool {
    let mut s = b.clone();
    for p in (2..=k + 1).filter(|&p| is_prime(p) && k.is_multiple_of(p - 1)) {
        s += BigRational::new(BigInt::one(), BigInt::from(p));
    }
    s.is_integer()
}

/// Decimal expansion of `num/den` truncated to `places` digits, by long division.
pub fn long_division(num: u64, den: u64, places: usize) -> String {
    let mut out = format!("{}.", num / den);
    let mut r = num % den;
    for _ in 0..places {
        r *= 10;
        out.push(char::from_digit((r / den) as u32, 10).unwrap());
        r %= den;
    }
    out
}
