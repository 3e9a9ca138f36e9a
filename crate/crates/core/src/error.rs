use thiserror::Error;

use crate::numeric::HalfInt;
use crate::regge::QuadSpins;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed spin `{0}` (expected an integer or half-integer such as 3, 3/2 or 1.5)")]
    ParseSpin(String),

    #[error("triangle condition violated for ({0}, {1}, {2})")]
    Triangle(HalfInt, HalfInt, HalfInt),

    #[error("quadrilateral {0} does not close")]
    Closure(QuadSpins),

    #[error("canonical form {canonical} of {original} leaves a non-canonical residual (a+d > b+c)")]
    NonCanonicalResidual { original: QuadSpins, canonical: QuadSpins },

    #[error("{what} is limited to spins <= {limit}, got {found}")]
    SpinBound { what: &'static str, limit: HalfInt, found: HalfInt },

    #[error("eigensolver did not converge after {iterations} iterations (index {index})")]
    NoConvergence { iterations: usize, index: usize },

    #[error("{0}")]
    Invalid(String),
}
