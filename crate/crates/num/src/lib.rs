//! Arbitrary-precision decimal arithmetic for the identity-verification
//! toolkit: `BigReal` (decimal bigfloat with an i64 exponent), exact
//! integer/rational combinatorics, transcendental functions and a
//! tail-bounded series engine.
//!
//! Everything is deterministic: identical inputs and `PrecisionContext`
//! produce bit-identical decimal serializations, regardless of thread count.

mod ctx;
mod error;
pub mod exact;
pub mod functions;
mod real;
mod series;

pub use ctx::{PrecisionContext, DEFAULT_MAX_TERMS};
pub use error::{Error, Result};
pub use real::{dec_digits, pow10, BigReal};
pub use series::sum_series;

// Exact arithmetic re-exports; the whole workspace uses these aliases.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
