//! Fixed-precision binary arithmetic used by every formula evaluation.

mod policy;
mod real;
mod transcendental;

pub use policy::{check_base, decimal_bits, digit_bits, PrecisionPolicy, MIN_GUARD_BITS};
pub use real::{relative_error_log2, ArbReal};
