//! Exact arithmetic shared by every other module: half-integer spins,
//! factored factorial ratios, and values of the form `q · Π √Δ²`.

mod half_int;
mod primes;
mod radical;
mod scaled;

pub use half_int::{half_int_range, HalfInt, MAX_TWICE};
pub use primes::FactorialProduct;
pub use radical::{radical_eq, radical_mul, triangle_coeff_sq, triangle_ok, RadicalMismatch, RadicalValue, Triad};
pub use scaled::ScaledFloat;

/// Arbitrary-precision rational, always in lowest terms.
pub type ExactRational = num_rational::BigRational;
