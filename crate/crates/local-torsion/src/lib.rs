//! Division polynomials and local p-torsion dimensions over Q_ℓ and over its
//! unramified extension of degree p.

mod divpoly;
mod torsion;

pub use divpoly::{division_polynomial, DivisionPolynomial, MAX_INDEX};
pub use torsion::{
    minimal_at, naive_torsion_count, torsion_dim_base, torsion_dim_first_layer, Layer,
    TorsionDimension,
};

use num_bigint::BigInt;
use padic::PadicError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("division polynomial index {0} unsupported (odd n ≤ 13 only)")]
    UnsupportedIndex(u32),
    #[error("{0} is not an admissible prime")]
    InvalidPrime(BigInt),
    #[error("ℓ must differ from p")]
    EllEqualsP,
    #[error("{0} points of exact order p is not of the form p^d − 1")]
    InvalidCount(u64),
    #[error("ψ_p has a root of negative valuation")]
    NonIntegralRoot,
    #[error("bad reduction at {0}")]
    BadReduction(BigInt),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
