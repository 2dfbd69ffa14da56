//! Finite-precision ℓ-adic integers, the unramified extensions of Q_ℓ,
//! root lifting and squareness tests.

mod lift;
mod padic_int;
mod square;
mod unramified;

pub use lift::{lift_roots, lift_roots_in, LiftedRoot, DEFAULT_PRECISION, MAX_DEPTH, MAX_DOUBLINGS};
pub use padic_int::PadicInt;
pub use square::{is_square, is_square_ext, is_square_rational, solve_quadratic_in_y, sqrt};
pub use unramified::{UnramifiedExtElement, UnramifiedExtension};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("precision exhausted (recursion depth {depth}, working precision {precision})")]
    PrecisionExhausted { depth: u32, precision: u32 },
    #[error("insufficient precision: need {needed} unit digits, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("zero input")]
    ZeroInput,
}
