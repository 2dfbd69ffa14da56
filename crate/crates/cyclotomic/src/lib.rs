//! Splitting numbers of primes in the cyclotomic Z_p-extension of Q.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

/// Exponent of the first modulus p^K tried.
pub const INITIAL_EXPONENT: u32 = 4;
/// Largest layer the oracle accepts.
pub const MAX_ORACLE_LAYERS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("ℓ must differ from p")]
    EllEqualsP,
    #[error("{0} is not an odd prime")]
    InvalidP(u32),
    #[error("{0} is not prime")]
    InvalidEll(BigInt),
    #[error("oracle supports at most {MAX_ORACLE_LAYERS} layers")]
    TooManyLayers,
}

/// Number of primes above ℓ in Q_cyc, with the data it is computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingNumber {
    #[serde(with = "arith_core::serde_int")]
    pub ell: BigInt,
    pub p: u32,
    /// v_p(ℓ^(p−1) − 1).
    pub k: u32,
    #[serde(with = "arith_core::serde_int")]
    pub s: BigInt,
    /// First layer from which the per-layer prime count is constant.
    pub stable_from_layer: u32,
}

fn check(ell: &BigInt, p: u32) -> Result<(), SplittingError> {
    if p < 3 || !arith_core::is_prime_u64(p as u64) {
        return Err(SplittingError::InvalidP(p));
    }
    if *ell == BigInt::from(p) {
        return Err(SplittingError::EllEqualsP);
    }
    if !arith_core::is_prime(ell) {
        return Err(SplittingError::InvalidEll(ell.clone()));
    }
    Ok(())
}

/// s(ℓ) = p^(k−1) with k = v_p(ℓ^(p−1) − 1).
pub fn splitting_number(ell: &BigInt, p: u32) -> Result<SplittingNumber, SplittingError> {
    check(ell, p)?;
    let pb = BigInt::from(p);
    let e = BigInt::from(p - 1);
    let mut big_k = INITIAL_EXPONENT;
    let k = loop {
        let m = pb.pow(big_k);
        let r = arith_core::mod_pow(ell, &e, &m);
        if !r.is_one() {
            break arith_core::valuation(&(r - 1u32), &pb).expect("nonzero");
        }
        big_k *= 2;
    };
    Ok(SplittingNumber {
        ell: ell.clone(),
        p,
        k,
        s: pb.pow(k - 1),
        stable_from_layer: k - 1,
    })
}

/// Number of primes above ℓ in each layer Q_n, n = 0..=layers, read off from
/// the order of ℓ modulo p^(n+1).
pub fn splitting_number_oracle(ell: &BigInt, p: u32, layers: u32) -> Result<Vec<u64>, SplittingError> {
    check(ell, p)?;
    if layers > MAX_ORACLE_LAYERS {
        return Err(SplittingError::TooManyLayers);
    }
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for n in 0..=layers {
        let m = pb.pow(n + 1);
        // p-part of the order: least p^j with ℓ^((p−1)p^j) ≡ 1.
        let mut x = arith_core::mod_pow(ell, &BigInt::from(p - 1), &m);
        let mut j = 0;
        while !x.is_one() {
            x = arith_core::mod_pow(&x, &pb, &m);
            j += 1;
        }
        out.push((p as u64).pow(n - j));
    }
    Ok(out)
}
