//! Integer arithmetic shared by the rest of the workspace: primality,
//! factorization, valuations and a few modular helpers.

mod factor;
mod modular;
mod prime;
pub mod serde_int;

pub use factor::{factor, Factorization};
pub use modular::{jacobi, mod_inverse, mod_pow, mods, sqrt_mod, valuation};
pub use prime::{is_prime, is_prime_u64, next_prime, primes_below};

pub use num_bigint::{BigInt, BigUint, Sign};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not a prime")]
    NotPrime(BigInt),
}

/// Parses a decimal integer, allowing a leading sign and surrounding whitespace.
pub fn parse_int(s: &str) -> Option<BigInt> {
    s.trim().parse::<BigInt>().ok()
}
