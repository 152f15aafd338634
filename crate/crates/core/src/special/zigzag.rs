//! Zigzag (up/down) numbers from the Seidel boustrophedon triangle.
//!
//! The zigzag number `A_n` counts alternating permutations of `n` elements.
//! Even indices give the secant numbers `|E_n|`, odd indices the tangent
//! numbers, from which `B_{2n} = (-1)^(n-1) 2n A_{2n-1} / (4^n (4^n - 1))`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Growing triangle state: only the last row is kept, plus every `A_n`.
#[derive(Debug)]
pub(crate) struct ZigzagTable {
    row: Vec<BigUint>,
    values: Vec<Arc<BigUint>>,
}

impl ZigzagTable {
    pub(crate) fn new() -> Self {
        ZigzagTable {
            row: vec![BigUint::one()],
            values: vec![Arc::new(BigUint::one())],
        }
    }

    /// Highest index computed so far.
    pub(crate) fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub(crate) fn get(&self, n: usize) -> Option<Arc<BigUint>> {
        self.values.get(n).cloned()
    }

    /// Extends the triangle through row `n`. Each new row costs one pass of
    /// big-integer additions over the previous row.
    pub(crate) fn extend_to(&mut self, n: usize) {
        while self.max_index() < n {
            // row_k[0] = 0, row_k[j] = row_k[j-1] + row_{k-1}[k-j]
            self.row.reverse();
            for j in 1..self.row.len() {
                let (done, rest) = self.row.split_at_mut(j);
                rest[0] += &done[j - 1];
            }
            self.row.insert(0, BigUint::zero());
            let last = self.row.last().cloned().unwrap_or_default();
            self.values.push(Arc::new(last));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zigzag_numbers() {
        // OEIS A000111
        let expected = [1u64, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792];
        let mut t = ZigzagTable::new();
        t.extend_to(expected.len() - 1);
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(*t.get(n).unwrap(), BigUint::from(*e), "A_{n}");
        }
    }

    #[test]
    fn incremental_extension_matches_fresh() {
        let mut a = ZigzagTable::new();
        a.extend_to(10);
        a.extend_to(30);
        let mut b = ZigzagTable::new();
        b.extend_to(30);
        for n in 0..=30 {
            assert_eq!(a.get(n), b.get(n));
        }
    }
}
