//! Closed-form approximations of π, π^k, 1/π, π² and n! built on Bernoulli,
//! Euler, partition and central binomial numbers.
//!
//! Every formula assembles its radicand or ratio exactly and rounds once when
//! converting to [`ArbReal`].

mod formulas;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use formulas::{
    evaluate, factorial_approx, inv_pi_euler, pi_bernoulli, pi_central_binomial, pi_euler,
    pi_partition, pi_power_bernoulli, pi_power_euler_odd, pi_squared_ratio, pi_stirling,
    STIRLING_SERIES,
};

use crate::error::{Error, Result};
use crate::oracle::{Constant, ErrorMeasure};
use crate::precision::{decimal_bits, ArbReal};
use crate::special::primes_up_to;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodId {
    BernoulliBasic,
    BernoulliCorrected,
    BernoulliPower,
    EulerBasic,
    EulerCorrected,
    EulerPowerOdd,
    EulerInverse,
    RatioBernoulliSq,
    RatioEulerSq,
    FactorialBernoulli,
    FactorialEuler,
    FactorialStirling,
    PiStirling,
    PiPartition,
    PiBinomialBasic,
    PiBinomialSeries,
}

impl MethodId {
    pub const ALL: [MethodId; 16] = [
        Self::BernoulliBasic,
        Self::BernoulliCorrected,
        Self::BernoulliPower,
        Self::EulerBasic,
        Self::EulerCorrected,
        Self::EulerPowerOdd,
        Self::EulerInverse,
        Self::RatioBernoulliSq,
        Self::RatioEulerSq,
        Self::FactorialBernoulli,
        Self::FactorialEuler,
        Self::FactorialStirling,
        Self::PiStirling,
        Self::PiPartition,
        Self::PiBinomialBasic,
        Self::PiBinomialSeries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::BernoulliBasic => "bernoulli_basic",
            Self::BernoulliCorrected => "bernoulli_corrected",
            Self::BernoulliPower => "bernoulli_power",
            Self::EulerBasic => "euler_basic",
            Self::EulerCorrected => "euler_corrected",
            Self::EulerPowerOdd => "euler_power_odd",
            Self::EulerInverse => "euler_inverse",
            Self::RatioBernoulliSq => "ratio_bernoulli_sq",
            Self::RatioEulerSq => "ratio_euler_sq",
            Self::FactorialBernoulli => "factorial_bernoulli",
            Self::FactorialEuler => "factorial_euler",
            Self::FactorialStirling => "factorial_stirling",
            Self::PiStirling => "pi_stirling",
            Self::PiPartition => "pi_partition",
            Self::PiBinomialBasic => "pi_binomial_basic",
            Self::PiBinomialSeries => "pi_binomial_series",
        }
    }

    /// The command-line spelling, e.g. `bernoulli-basic`.
    pub fn cli_name(self) -> String {
        self.name().replace('_', "-")
    }

    /// Factorial formulas report relative error; everything else absolute.
    pub fn error_scale(self) -> ErrorScale {
        match self {
            Self::FactorialBernoulli | Self::FactorialEuler | Self::FactorialStirling => {
                ErrorScale::Relative
            }
            _ => ErrorScale::Absolute,
        }
    }

    /// The constant approximated at index `n`.
    pub fn target(self, n: u64) -> Constant {
        match self {
            Self::BernoulliPower => Constant::PiPower(n),
            Self::EulerPowerOdd => Constant::PiPower(2 * n + 1),
            Self::EulerInverse => Constant::InvPi,
            Self::RatioBernoulliSq | Self::RatioEulerSq => Constant::PiSquared,
            Self::FactorialBernoulli | Self::FactorialEuler | Self::FactorialStirling => {
                Constant::Factorial(n)
            }
            _ => Constant::Pi,
        }
    }

    /// Correction terms used when none are requested.
    pub fn default_terms(self) -> u32 {
        match self {
            Self::BernoulliCorrected | Self::BernoulliPower | Self::FactorialStirling => 4,
            Self::EulerCorrected | Self::EulerInverse => 1,
            Self::EulerPowerOdd | Self::PiBinomialSeries => 4,
            _ => 0,
        }
    }

    pub fn default_variant(self) -> Option<Variant> {
        match self {
            Self::EulerPowerOdd => Some(Variant::BetaSeries),
            Self::EulerInverse => Some(Variant::ReciprocalFactor),
            _ => None,
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    /// Accepts both `bernoulli_basic` and `bernoulli-basic`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::domain(format!("unknown method '{s}'")))
    }
}

/// Alternative readings of two printed formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// The factors exactly as printed.
    AsPrinted,
    /// π^(2n+1) with the 9-term sign following the alternating beta series.
    BetaSeries,
    /// 1/π with the correction factor inverted along with the formula.
    ReciprocalFactor,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Self::AsPrinted => "as_printed",
            Self::BetaSeries => "beta_series",
            Self::ReciprocalFactor => "reciprocal_factor",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        [Self::AsPrinted, Self::BetaSeries, Self::ReciprocalFactor]
            .into_iter()
            .find(|v| v.name() == key)
            .ok_or_else(|| Error::domain(format!("unknown variant '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorScale {
    Absolute,
    Relative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorialSource {
    Bernoulli,
    Euler,
    Stirling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioSource {
    Bernoulli,
    Euler,
}

/// Working precision for an evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    /// Enough bits to resolve the predicted error with 40 decimal digits to spare.
    #[default]
    Auto,
    Bits(u64),
}

/// A request for one formula evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MethodSpec {
    pub method: MethodId,
    pub n: u64,
    pub terms: Option<u32>,
    pub variant: Option<Variant>,
}

impl MethodSpec {
    pub fn new(method: MethodId, n: u64) -> Self {
        MethodSpec {
            method,
            n,
            terms: None,
            variant: None,
        }
    }

    pub fn with_terms(mut self, terms: u32) -> Self {
        self.terms = Some(terms);
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = Some(variant);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxResult {
    pub value: ArbReal,
    pub method: MethodId,
    pub index_n: u64,
    pub correction_terms: u32,
    /// Predicted `floor(log10)` of the error, on `error_scale`.
    pub apriori_error_log10: i64,
    pub measured_error_log10: Option<ErrorMeasure>,
    pub variant: Option<Variant>,
    pub error_scale: ErrorScale,
}

impl ApproxResult {
    pub fn target(&self) -> Constant {
        self.method.target(self.index_n)
    }

    pub fn precision_bits(&self) -> u64 {
        self.value.precision()
    }
}

/// Rough `log10` of the magnitude of a target, used only for precision budgets.
pub(crate) fn target_log10(target: Constant) -> f64 {
    match target {
        Constant::Pi | Constant::PiSquared => 1.0,
        Constant::InvPi => 0.0,
        Constant::PiPower(k) => k as f64 * std::f64::consts::PI.log10(),
        Constant::Factorial(n) => log10_factorial(n),
    }
}

fn log10_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let x = n as f64;
    (x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x))
        / std::f64::consts::LN_10
}

/// Bits that resolve an error of `10^apriori` on `scale` for `target`, with
/// 40 decimal digits of headroom.
pub(crate) fn auto_bits(target: Constant, scale: ErrorScale, apriori: i64) -> u64 {
    let magnitude = match scale {
        ErrorScale::Absolute => target_log10(target).ceil().max(0.0) as u64,
        ErrorScale::Relative => 0,
    };
    decimal_bits(apriori.unsigned_abs() + magnitude + 40) + 64
}

/// The `k`-th prime, 1-based.
fn nth_prime(k: u64) -> u64 {
    let mut limit = 32u64;
    loop {
        let primes = primes_up_to(limit);
        if primes.len() as u64 >= k {
            return primes[(k - 1) as usize];
        }
        limit *= 2;
    }
}

/// `log10` of the `k`-th prime: exact by sieve up to `10^6`, asymptotic beyond.
fn log10_nth_prime(k: u64) -> f64 {
    if k <= 1_000_000 {
        return (nth_prime(k) as f64).log10();
    }
    let x = k as f64;
    let l = x.ln();
    let ll = l.ln();
    (x * (l + ll - 1.0 + (ll - 2.0) / l)).log10()
}

/// Predicted count of correct decimal digits of π from the Bernoulli formula
/// at index `n` with `product_terms` Euler-product factors.
pub fn digits_gain_estimate(n: u64, product_terms: u64) -> Result<u64> {
    if n < 10 {
        return Err(Error::domain(format!("index {n} below 10")));
    }
    Ok((n as f64 * log10_nth_prime(product_terms + 1)).floor() as u64)
}

/// `log10` of the relative width of the two-sided bound on `|B_2n|` or `|E_2n|`.
pub fn apriori_bound_gap(method: MethodId, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    let n = n as f64;
    match method {
        MethodId::BernoulliBasic => {
            let t = (1.0 - 2.0 * n) * 2f64.log10();
            Ok(t - (-(10f64.powf(t))).ln_1p() / std::f64::consts::LN_10)
        }
        MethodId::EulerBasic => {
            let t = (-1.0 - 2.0 * n) * 3f64.log10();
            Ok(t - (10f64.powf(t)).ln_1p() / std::f64::consts::LN_10)
        }
        other => Err(Error::domain(format!(
            "no two-sided bound for method {other}"
        ))),
    }
}

/// `floor(k * log10(base))` for the a-priori exponents.
pub(crate) fn floor_log10_pow(k: u64, base: f64) -> i64 {
    (k as f64 * base.log10()).floor() as i64
}

/// Predicted error exponent for a method at index `n` with `terms` corrections.
pub fn apriori_error_log10(spec: &MethodSpec) -> Result<i64> {
    formulas::check_spec(spec).map(|(_, _, apriori)| apriori)
}
