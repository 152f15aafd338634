//! A fast end-to-end health check of the library.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, Execution};
use crate::error::Result;
use crate::oracle;
use crate::special::{cache_load, SequenceKind, SpecialNumbers};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, outcome: Result<String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

#[derive(Clone, Debug)]
pub struct SelftestOptions<'a> {
    /// The decimal string of π to validate; normally [`oracle::PI_1000`].
    pub embedded_pi: &'a str,
    /// Directory whose cache files are verified and, when valid, preloaded.
    pub cache_dir: Option<&'a Path>,
    pub max_position: u64,
    pub sandwich_n: u64,
    pub exec: Execution,
}

impl Default for SelftestOptions<'_> {
    fn default() -> Self {
        SelftestOptions {
            embedded_pi: oracle::PI_1000,
            cache_dir: None,
            max_position: 100,
            sandwich_n: 60,
            exec: Execution::Parallel,
        }
    }
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..k {
        let mut next = vec![BigInt::from(1)];
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(BigInt::from(1));
        row = next;
    }
    row
}

/// Compares the production generators with the defining recurrences for
/// indices up to `max`.
fn recurrences(numbers: &SpecialNumbers, max: usize) -> Result<String> {
    let mut b: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
    for k in 1..=max {
        let row = binomial_row(k + 1);
        let sum: BigRational = (0..k).map(|j| &b[j] * &row[j]).sum();
        b.push(-sum / BigRational::from_integer(row[k].clone()));
    }
    let mut e: Vec<BigInt> = vec![BigInt::from(1)];
    for n in 1..=max / 2 {
        let row = binomial_row(2 * n);
        let sum: BigInt = (0..n).map(|j| &row[2 * j] * &e[j]).sum();
        e.push(-sum);
    }
    for k in (0..=max).step_by(2) {
        if numbers.bernoulli(k as u64)? != b[k] {
            return Err(crate::Error::Consistency(format!("B_{k} differs from the recurrence")));
        }
        if numbers.euler(k as u64)? != e[k / 2] {
            return Err(crate::Error::Consistency(format!("E_{k} differs from the recurrence")));
        }
    }
    if b.iter().skip(3).step_by(2).any(|v| !v.is_zero()) {
        return Err(crate::Error::Consistency("odd Bernoulli recurrence values nonzero".into()));
    }
    Ok(format!("B_k and E_k agree for even k <= {max}"))
}

/// Runs every check and collects the outcome; never stops at the first failure.
pub fn selftest(numbers: &SpecialNumbers, options: &SelftestOptions<'_>) -> SelftestReport {
    let mut report = SelftestReport::default();

    if let Some(dir) = options.cache_dir {
        for kind in SequenceKind::ALL {
            let path = dir.join(kind.file_name());
            if !path.exists() {
                continue;
            }
            match cache_load(&path, Some(kind)) {
                Ok(cache) => numbers.preload(cache),
                Err(e) => report
                    .warnings
                    .push(format!("excluded cache {}: {e}", path.display())),
            }
        }
    }

    report.record(
        "embedded-constant",
        oracle::check_embedded_constant(options.embedded_pi).map(|_| {
            format!("{} decimals match", options.embedded_pi.len().saturating_sub(2))
        }),
    );
    report.record(
        "dual-identity",
        [10, 100, 1000]
            .into_iter()
            .try_for_each(oracle::dual_identity_check)
            .map(|_| "identities agree at 10, 100 and 1000 digits".to_string()),
    );
    report.record("recurrence-equivalence", recurrences(numbers, 40));
    report.record(
        "sandwich-bounds",
        analysis::sandwich_check(numbers, options.sandwich_n, 200, options.exec).and_then(|r| {
            match r.violations.first() {
                None => Ok(format!("bounds hold for n <= {}", r.checked)),
                Some(v) => Err(crate::Error::Consistency(format!(
                    "{} {} bound fails at n = {}",
                    v.kind.tag(),
                    v.bound,
                    v.n
                ))),
            }
        }),
    );
    let cases: Vec<(u64, u32)> = [2u32, 10, 16]
        .into_iter()
        .flat_map(|b| (0..=options.max_position).map(move |n| (n, b)))
        .collect();
    report.record(
        "digit-agreement",
        analysis::digit_agreement(numbers, &cases, options.exec).and_then(|checks| {
            analysis::require_agreement(&checks)?;
            Ok(format!("{} digits match the oracle", checks.len()))
        }),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_build_passes() {
        let s = SpecialNumbers::new();
        let opts = SelftestOptions {
            max_position: 20,
            sandwich_n: 20,
            ..Default::default()
        };
        let r = selftest(&s, &opts);
        assert!(r.passed(), "{r:?}");
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn tampered_constant_fails_by_name() {
        let tampered = oracle::PI_1000.replacen("2643383279", "2643383270", 1);
        let opts = SelftestOptions {
            embedded_pi: &tampered,
            max_position: 5,
            sandwich_n: 5,
            ..Default::default()
        };
        let r = selftest(&SpecialNumbers::new(), &opts);
        assert!(!r.passed());
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].name, "embedded-constant");
        assert!(failed[0].detail.contains("embedded-constant mismatch"));
    }
}
