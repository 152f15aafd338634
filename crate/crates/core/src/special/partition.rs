use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `p(0..=max)` grown with Euler's pentagonal-number recurrence
/// `p(n) = sum_k (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
#[derive(Debug)]
pub(crate) struct PartitionTable {
    values: Vec<BigInt>,
}

impl PartitionTable {
    pub(crate) fn new() -> Self {
        PartitionTable {
            values: vec![BigInt::one()],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    /// Replaces the table with a verified contiguous prefix when it is longer.
    pub(crate) fn seed(&mut self, values: Vec<BigInt>) {
        if values.len() > self.values.len() && values.first().is_some_and(|v| v.is_one()) {
            self.values = values;
        }
    }

    pub(crate) fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let i = self.values.len();
            let mut sum = BigInt::zero();
            let mut k = 1usize;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > i {
                    break;
                }
                let g2 = k * (3 * k + 1) / 2;
                let mut pair = self.values[i - g1].clone();
                if g2 <= i {
                    pair += &self.values[i - g2];
                }
                if k % 2 == 1 {
                    sum += pair;
                } else {
                    sum -= pair;
                }
                k += 1;
            }
            self.values.push(sum);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let mut t = PartitionTable::new();
        t.extend_to(10);
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(t.get(n).unwrap(), &BigInt::from(*e));
        }
    }

    #[test]
    fn p_100() {
        let mut t = PartitionTable::new();
        t.extend_to(100);
        assert_eq!(t.get(100).unwrap(), &BigInt::from(190_569_292u64));
    }
}
