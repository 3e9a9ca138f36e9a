//! Exact Wigner 6j symbols, Regge canonical forms of the seven-spin network,
//! tetrahedral caustics and the spin-network volume operator.

mod error;

pub mod geometry;
pub mod identities;
pub mod numeric;
pub mod regge;
pub mod volume;
pub mod wigner;

pub use error::Error;
pub use numeric::{HalfInt, RadicalValue, Triad};
pub use regge::{QuadSpins, SevenSpinNetwork};
pub use wigner::SixJ;

pub type Result<T, E = Error> = std::result::Result<T, E>;
