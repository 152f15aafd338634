//! Batch evaluation: error sweeps, slope fits, the variant comparison, the
//! two-sided bounds on Bernoulli and Euler numbers and digit agreement.
//!
//! Work items are independent. With the `parallel` feature they fan out over
//! rayon; results always come back in input order.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::approximants::{self, ApproxResult, ErrorScale, MethodId, MethodSpec, Precision, Variant};
use crate::digits::{self, Target};
use crate::error::{Error, Result};
use crate::oracle::{self, ErrorMeasure};
use crate::precision::{decimal_bits, ArbReal};
use crate::special::{factorial_exact, SequenceKind, SpecialNumbers};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon worker threads when built with `parallel`, sequential otherwise.
    #[default]
    Parallel,
}

/// Applies `f` to every item, preserving order.
pub fn map_items<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// The highest Bernoulli/Euler index a spec reads, or 0 when it reads none.
pub fn zigzag_index(spec: &MethodSpec) -> u64 {
    match spec.method {
        MethodId::EulerBasic
        | MethodId::EulerCorrected
        | MethodId::EulerPowerOdd
        | MethodId::EulerInverse => 2 * spec.n,
        MethodId::RatioBernoulliSq | MethodId::RatioEulerSq => 2 * spec.n + 2,
        MethodId::PiPartition
        | MethodId::PiStirling
        | MethodId::PiBinomialBasic
        | MethodId::PiBinomialSeries => 0,
        _ => spec.n,
    }
}

/// Grows the shared tables once so parallel workers only read them.
pub fn prepare(numbers: &SpecialNumbers, specs: &[MethodSpec]) {
    let zigzag = specs.iter().map(zigzag_index).max().unwrap_or(0);
    let partitions = specs
        .iter()
        .filter(|s| s.method == MethodId::PiPartition)
        .map(|s| s.n)
        .max()
        .unwrap_or(0);
    numbers.ensure_index(zigzag);
    numbers.ensure_partitions(partitions);
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub result: ApproxResult,
    pub measured: ErrorMeasure,
    /// `log10` of the measured error, for fitting.
    pub error_log10: f64,
}

/// Evaluates and measures every spec; the output is sorted by `(method, n)`.
pub fn sweep(numbers: &SpecialNumbers, specs: &[MethodSpec], exec: Execution) -> Result<Vec<SweepPoint>> {
    prepare(numbers, specs);
    let mut ordered = specs.to_vec();
    ordered.sort();
    map_items(&ordered, exec, |spec| {
        let mut result = approximants::evaluate(numbers, spec, Precision::Auto)?;
        let reference = oracle::reference_for(&result)?;
        let measured = oracle::measured_error_log10(&mut result, &reference)?;
        let err = oracle::error_value(&result.value, &reference, result.error_scale)?;
        Ok(SweepPoint {
            error_log10: err.log10_abs(),
            measured,
            result,
        })
    })
    .into_iter()
    .collect()
}

/// The abscissa against which a method's error is fitted: the exponent of
/// the geometric term, or `log10 n` for polynomial methods.
pub fn slope_axis(method: MethodId, n: u64) -> f64 {
    match method {
        MethodId::EulerBasic
        | MethodId::EulerCorrected
        | MethodId::EulerPowerOdd
        | MethodId::EulerInverse => (2 * n + 1) as f64,
        MethodId::PiStirling
        | MethodId::PiPartition
        | MethodId::PiBinomialBasic
        | MethodId::PiBinomialSeries => (n as f64).log10(),
        _ => n as f64,
    }
}

/// Slope predicted for a method on its [`slope_axis`], where one exists.
pub fn expected_slope(method: MethodId, terms: u32) -> Option<f64> {
    let log = |x: f64| x.log10();
    match method {
        MethodId::BernoulliBasic => Some(-log(2.0)),
        MethodId::BernoulliCorrected => Some(-log([3.0, 5.0, 7.0, 11.0][terms as usize - 1])),
        MethodId::EulerBasic => Some(-log(3.0)),
        MethodId::EulerCorrected => Some(-log(5.0)),
        MethodId::RatioBernoulliSq => Some(-log(4.0)),
        MethodId::RatioEulerSq => Some(-log(9.0)),
        MethodId::PiBinomialBasic => Some(-1.0),
        MethodId::PiBinomialSeries => Some(-(terms as f64 + 1.0)),
        _ => None,
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub method: MethodId,
    pub slope: f64,
    pub expected: Option<f64>,
}

impl SlopeFit {
    /// `|slope / expected - 1| <= tolerance`.
    pub fn within(&self, tolerance: f64) -> Option<bool> {
        self.expected.map(|e| (self.slope / e - 1.0).abs() <= tolerance)
    }
}

/// Fits one slope per method over the sweep points of that method.
pub fn fit_slopes(points: &[SweepPoint]) -> Vec<SlopeFit> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let method = points[i].result.method;
        let terms = points[i].result.correction_terms;
        let group: Vec<&SweepPoint> = points[i..]
            .iter()
            .take_while(|p| p.result.method == method)
            .collect();
        i += group.len();
        let xs: Vec<f64> = group.iter().map(|p| slope_axis(method, p.result.index_n)).collect();
        let ys: Vec<f64> = group.iter().map(|p| p.error_log10).collect();
        if let Some(slope) = fit_slope(&xs, &ys) {
            out.push(SlopeFit {
                method,
                slope,
                expected: expected_slope(method, terms),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantRow {
    pub n: u64,
    /// `log10` of the relative error of each variant of π^(2n+1).
    pub as_printed: f64,
    pub beta_series: f64,
    pub winner: Variant,
    /// `log10(11^-(2n+1))`.
    pub bound: f64,
}

/// Compares both readings of the π^(2n+1) product at each `n`.
pub fn variant_report(numbers: &SpecialNumbers, ns: &[u64], exec: Execution) -> Result<Vec<VariantRow>> {
    numbers.ensure_index(2 * ns.iter().copied().max().unwrap_or(0));
    map_items(ns, exec, |&n| {
        let mut errs = [0.0; 2];
        for (slot, variant) in [Variant::AsPrinted, Variant::BetaSeries].into_iter().enumerate() {
            let r = approximants::pi_power_euler_odd(numbers, n, variant, Precision::Auto)?;
            let reference = oracle::reference_for(&r)?;
            errs[slot] = oracle::error_value(&r.value, &reference, ErrorScale::Relative)?.log10_abs();
        }
        Ok(VariantRow {
            n,
            as_printed: errs[0],
            beta_series: errs[1],
            winner: if errs[1] <= errs[0] {
                Variant::BetaSeries
            } else {
                Variant::AsPrinted
            },
            bound: -((2 * n + 1) as f64) * 11f64.log10(),
        })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub kind: SequenceKind,
    pub n: u64,
    pub bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub checked: u64,
    pub violations: Vec<BoundViolation>,
}

/// Checks, for `n` in `1..=max_n`,
/// `2(2n)!/(2π)^2n < |B_2n| < 2(2n)!/(2π)^2n / (1 - 2^(1-2n))` and
/// `4^(n+1)(2n)!/π^(2n+1) / (1 + 3^(-1-2n)) < |E_2n| < 4^(n+1)(2n)!/π^(2n+1)`.
///
/// π is taken at `max(pi_digits, 5^-(2n+1) resolution + 30)` digits: the
/// lower Euler bound sits within about `5^-(2n+1)` of `|E_2n|`.
pub fn sandwich_check(numbers: &SpecialNumbers, max_n: u64, pi_digits: u64, exec: Execution) -> Result<SandwichReport> {
    numbers.ensure_index(2 * max_n);
    let ns: Vec<u64> = (1..=max_n).collect();
    let found: Vec<Vec<BoundViolation>> = map_items(&ns, exec, |&n| sandwich_at(numbers, n, pi_digits))
        .into_iter()
        .collect::<Result<_>>()?;
    Ok(SandwichReport {
        checked: max_n,
        violations: found.into_iter().flatten().collect(),
    })
}

fn sandwich_at(numbers: &SpecialNumbers, n: u64, pi_digits: u64) -> Result<Vec<BoundViolation>> {
    let k = 2 * n + 1;
    let digits = pi_digits.max((k as f64 * 5f64.log10()).ceil() as u64 + 30);
    let w = decimal_bits(digits) + 64;
    let pi = oracle::pi_value(w + 32)?;
    let fact = ArbReal::from_bigint(&factorial_exact(2 * n), w);
    let mut out = Vec::new();
    let mut violation = |kind, bound: &str| {
        out.push(BoundViolation {
            kind,
            n,
            bound: bound.to_string(),
        })
    };

    let b = numbers.bernoulli(2 * n)?;
    let b_abs = ArbReal::from_ratio(&b.numer().abs(), b.denom(), w)?;
    let lower = fact
        .mul_pow2(1)
        .div(&pi.mul_pow2(1).with_precision(w).pow_int(2 * n as i64)?, w)?;
    let shrink = ArbReal::from_ratio(&(BigInt::from(1) << (2 * n - 1) as usize), &((BigInt::from(1) << (2 * n - 1) as usize) - 1), w)?;
    let upper = lower.mul(&shrink, w);
    if b_abs <= lower {
        violation(SequenceKind::Bernoulli, "lower");
    }
    if b_abs >= upper {
        violation(SequenceKind::Bernoulli, "upper");
    }

    let e_abs = ArbReal::from_bigint(&numbers.euler(2 * n)?.abs(), w);
    let upper = fact
        .mul_pow2(2 * (n as i64 + 1))
        .div(&pi.with_precision(w).pow_int(k as i64)?, w)?;
    let three = num_traits::pow(BigInt::from(3), k as usize);
    let lower = upper.mul(&ArbReal::from_ratio(&three, &(&three + 1), w)?, w);
    if e_abs <= lower {
        violation(SequenceKind::Euler, "lower");
    }
    if e_abs >= upper {
        violation(SequenceKind::Euler, "upper");
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitCheck {
    pub position: u64,
    pub base: u32,
    pub digit: Option<u32>,
    pub expected: u32,
    pub stable: bool,
    pub error: Option<String>,
}

impl DigitCheck {
    pub fn passed(&self) -> bool {
        self.stable && self.digit == Some(self.expected)
    }
}

/// Extracts the digits of π at every `(position, base)` pair with the
/// default method and compares them with the oracle.
pub fn digit_agreement(numbers: &SpecialNumbers, cases: &[(u64, u32)], exec: Execution) -> Result<Vec<DigitCheck>> {
    let digits10 = cases
        .iter()
        .map(|&(n, b)| oracle::digits_for_position(n, b))
        .max()
        .unwrap_or(1);
    let reference = oracle::reference_pi(digits10)?;
    let expected: Vec<u32> = cases
        .iter()
        .map(|&(n, b)| oracle::reference_digit(&reference, n, b))
        .collect::<Result<_>>()?;
    let planned: Vec<MethodSpec> = cases
        .iter()
        .filter_map(|&(n, b)| digits::planned_spec(Target::Pi, n, b, None, digits::DEFAULT_MAX_INDEX).ok())
        .collect();
    prepare(numbers, &planned);
    let checks = map_items(cases, exec, |&(n, b)| digits::digit_of(numbers, Target::Pi, n, b, None));
    Ok(cases
        .iter()
        .zip(expected)
        .zip(checks)
        .map(|((&(position, base), expected), got)| match got {
            Ok(r) => DigitCheck {
                position,
                base,
                digit: Some(r.digit),
                expected,
                stable: r.stable,
                error: None,
            },
            Err(e) => DigitCheck {
                position,
                base,
                digit: None,
                expected,
                stable: false,
                error: Some(e.to_string()),
            },
        })
        .collect())
}

/// Fails with the first mismatch, for callers that only need pass/fail.
pub fn require_agreement(checks: &[DigitCheck]) -> Result<()> {
    match checks.iter().find(|c| !c.passed()) {
        None => Ok(()),
        Some(c) => Err(Error::Consistency(format!(
            "digit {} in base {}: got {:?}, oracle {}{}",
            c.position,
            c.base,
            c.digit,
            c.expected,
            c.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        assert!((fit_slope(&xs, &ys).unwrap() - 2.0).abs() < 1e-12);
        assert!(fit_slope(&[1.0], &[1.0]).is_none());
        assert!(fit_slope(&[1.0, 1.0], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..100).collect();
        let seq = map_items(&items, Execution::Sequential, |x| x * x);
        let par = map_items(&items, Execution::Parallel, |x| x * x);
        assert_eq!(seq, par);
    }

    #[test]
    fn sweep_sorts_by_method_and_index() {
        let s = SpecialNumbers::new();
        let specs = [
            MethodSpec::new(MethodId::RatioEulerSq, 20),
            MethodSpec::new(MethodId::EulerBasic, 10),
            MethodSpec::new(MethodId::RatioEulerSq, 10),
        ];
        let pts = sweep(&s, &specs, Execution::Parallel).unwrap();
        let order: Vec<(MethodId, u64)> = pts.iter().map(|p| (p.result.method, p.result.index_n)).collect();
        assert_eq!(
            order,
            vec![
                (MethodId::EulerBasic, 10),
                (MethodId::RatioEulerSq, 10),
                (MethodId::RatioEulerSq, 20)
            ]
        );
    }

    #[test]
    fn small_sandwich() {
        let s = SpecialNumbers::new();
        let r = sandwich_check(&s, 30, 200, Execution::Sequential).unwrap();
        assert_eq!(r.checked, 30);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }
}
