//! Polynomials over finite fields and root extraction in F_p and F_{p^d}.

mod field;
mod fppoly;
pub mod poly;

pub use field::{ExtFieldElement, ExtensionField, FiniteField, PrimeField};
pub use fppoly::FpPoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Roots of `f` in F_p, each with its multiplicity, in increasing order.
pub fn roots_mod_prime(f: &FpPoly, rng: &mut dyn RngCore) -> Vec<(BigInt, u32)> {
    poly::roots(&f.field(), f.coeffs(), rng)
}

/// Roots of `f` in F_{p^d} (the field of [`canonical_irreducible`]), with
/// multiplicities.
pub fn roots_in_extension(f: &FpPoly, d: u32, rng: &mut dyn RngCore) -> Vec<(ExtFieldElement, u32)> {
    roots_in_field(f, &ExtensionField::canonical(f.prime(), d), rng)
}

/// Roots of `f` in a given extension of its prime field.
pub fn roots_in_field(
    f: &FpPoly,
    k: &ExtensionField,
    rng: &mut dyn RngCore,
) -> Vec<(ExtFieldElement, u32)> {
    let lifted: Vec<ExtFieldElement> = f.coeffs().iter().map(|c| k.from_int(c)).collect();
    poly::roots(k, &lifted, rng)
}

pub fn is_irreducible(f: &FpPoly) -> bool {
    poly::is_irreducible(&f.field(), f.coeffs())
}

/// Deterministic monic irreducible of degree `d` over F_p.
///
/// Tries `x^d + a·x + b` in the order `a = 0, 1, …` with `b = 1, …, p−1`
/// inside, then `x^d + x^2 + a·x + b`, and finally a seeded random search.
/// For `d = 1` this is `x`.
pub fn canonical_irreducible(p: &BigInt, d: u32) -> FpPoly {
    assert!(d >= 1, "degree must be positive");
    if d == 1 {
        return FpPoly::x(p.clone());
    }
    let d = d as usize;
    let bound = BigInt::from(64).min(p.clone());
    for quadratic in [false, true] {
        if quadratic && d < 4 {
            continue;
        }
        let mut a = BigInt::zero();
        while a < bound {
            let mut b = BigInt::one();
            while &b < p && b < bound {
                let mut c = vec![BigInt::zero(); d + 1];
                c[0] = b.clone();
                c[1] = a.clone();
                if quadratic {
                    c[2] = BigInt::one();
                }
                c[d] = BigInt::one();
                let f = FpPoly::new(p.clone(), c);
                if is_irreducible(&f) {
                    return f;
                }
                b += 1;
            }
            a += 1;
        }
    }
    random_irreducible(p, d as u32, Some(0))
}

/// Monic irreducible of degree `d` over F_p. With `seed = None` this is
/// [`canonical_irreducible`]; with a seed the search is random but
/// reproducible.
pub fn random_irreducible(p: &BigInt, d: u32, seed: Option<u64>) -> FpPoly {
    let seed = match seed {
        None => return canonical_irreducible(p, d),
        Some(s) => s,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = PrimeField::new(p.clone());
    loop {
        let mut c: Vec<BigInt> = (0..d).map(|_| k.random(&mut rng)).collect();
        c.push(BigInt::one());
        let f = FpPoly::new(p.clone(), c);
        if is_irreducible(&f) {
            return f;
        }
    }
}
