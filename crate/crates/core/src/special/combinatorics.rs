use num_bigint::BigUint;
use num_traits::One;

/// Product of all integers in `lo..=hi` by a balanced product tree.
pub(crate) fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::one();
        let mut chunk: u64 = 1;
        for k in lo..=hi {
            match chunk.checked_mul(k) {
                Some(c) => chunk = c,
                None => {
                    acc *= chunk;
                    chunk = k;
                }
            }
        }
        return acc * chunk;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

/// Product of a list of factors by a balanced tree.
pub(crate) fn tree_product(factors: &[BigUint]) -> BigUint {
    match factors.len() {
        0 => BigUint::one(),
        1 => factors[0].clone(),
        n => tree_product(&factors[..n / 2]) * tree_product(&factors[n / 2..]),
    }
}

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `n!` as a balanced product tree.
pub fn factorial_exact(n: u64) -> BigUint {
    range_product(2, n)
}

/// `C(2n, n)` from its prime factorisation (Legendre's formula).
pub fn central_binomial(n: u64) -> BigUint {
    let mut factors = Vec::new();
    for p in primes_up_to(2 * n) {
        let mut e = 0u32;
        let mut pk = p;
        loop {
            e += ((2 * n) / pk - 2 * (n / pk)) as u32;
            match pk.checked_mul(p) {
                Some(next) if next <= 2 * n => pk = next,
                _ => break,
            }
        }
        if e > 0 {
            factors.push(BigUint::from(p).pow(e));
        }
    }
    tree_product(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial_exact(0), BigUint::one());
        assert_eq!(factorial_exact(1), BigUint::one());
        assert_eq!(factorial_exact(10), BigUint::from(3_628_800u32));
        // 25! overflows u64 inside the leaf loop
        assert_eq!(
            factorial_exact(25).to_string(),
            "15511210043330985984000000"
        );
    }

    #[test]
    fn central_binomials() {
        assert_eq!(central_binomial(0), BigUint::one());
        assert_eq!(central_binomial(1), BigUint::from(2u32));
        assert_eq!(central_binomial(10), BigUint::from(184_756u32));
    }

    #[test]
    fn sieve() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
    }
}
