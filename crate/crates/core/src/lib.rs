//! Digits of π, π^n and 1/π from asymptotic formulas over Bernoulli and
//! Euler numbers, with an independent oracle that measures every formula.

pub mod analysis;
pub mod approximants;
pub mod digits;
pub mod error;
pub mod oracle;
pub mod precision;
pub mod selftest;
pub mod special;

pub use error::{Error, Result};
