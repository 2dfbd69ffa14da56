//! Weierstrass models over Q: invariants, minimal models, Tate's algorithm,
//! point counts modulo small primes and the supersingularity check.

mod curve;
mod minimal;
mod points;
mod tate;

pub use curve::{Invariants, Isomorphism, WeierstrassCurve};
pub use minimal::{is_minimal, minimal_model};
pub use points::{a_p, check_hyp1, count_points_mod_p, HypOneVerdict};
pub use tate::{tate_local, Kodaira, LocalReductionData, ReductionType};

use arith_core::Factorization;
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EcError {
    #[error("singular curve (discriminant 0)")]
    Singular,
    #[error("cannot parse curve {0:?}; expected [a1,a2,a3,a4,a6] or [a4,a6]")]
    Parse(String),
    #[error("bad reduction at {p}")]
    BadReduction { p: u64 },
    #[error("discriminant not fully factored (cofactor {0})")]
    IncompleteFactorization(BigInt),
    #[error("transformed model is not integral")]
    NotIntegral,
}

/// Local data at every prime dividing the minimal discriminant, in increasing order.
pub fn local_data(curve: &WeierstrassCurve) -> Result<Vec<LocalReductionData>, EcError> {
    let (min, _) = minimal_model(curve);
    let fact = min.discriminant_factorization();
    if let Some(c) = fact.cofactor() {
        return Err(EcError::IncompleteFactorization(c.clone()));
    }
    Ok(fact.primes().map(|(p, _)| tate_local(&min, p)).collect())
}

/// The conductor as a factorization `∏ ℓ^f_ℓ`.
pub fn conductor(curve: &WeierstrassCurve) -> Result<Factorization, EcError> {
    Ok(Factorization::from_primes(
        local_data(curve)?
            .into_iter()
            .filter(|d| d.conductor_exponent > 0)
            .map(|d| (d.prime, d.conductor_exponent)),
    ))
}

/// Primes of bad reduction.
pub fn bad_primes(curve: &WeierstrassCurve) -> Result<Vec<BigInt>, EcError> {
    let (min, _) = minimal_model(curve);
    let fact = min.discriminant_factorization();
    match fact.cofactor() {
        Some(c) => Err(EcError::IncompleteFactorization(c.abs())),
        None => Ok(fact.prime_list()),
    }
}
