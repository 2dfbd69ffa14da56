use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ArithError;

/// `base^exp mod modulus`, result in `[0, modulus)`.
///
/// Panics if `exp` is negative or `modulus < 1`.
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> BigInt {
    assert!(modulus.is_positive(), "modulus must be positive");
    assert!(!exp.is_negative(), "negative exponent");
    base.mod_floor(modulus).modpow(exp, modulus)
}

/// Representative of `a mod m` in `(-m/2, m/2]`.
pub fn mods(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Largest `e` with `ell^e | n`.
pub fn valuation(n: &BigInt, ell: &BigInt) -> Result<u32, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(ell);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    assert!(n.is_positive() && n.is_odd(), "jacobi needs odd positive n");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap_or(0);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Square root of `a` modulo the prime `p` (Tonelli–Shanks), or `None` for
/// a non-residue.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if p == &BigInt::from(2) {
        return Some(a);
    }
    if jacobi(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let p1: BigInt = p - 1;
    let s = p1.trailing_zeros().unwrap_or(0);
    let q = &p1 >> s;
    let mut z = BigInt::from(2);
    while jacobi(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = &tt * &tt % p;
            i += 1;
        }
        let b = c.modpow(&(&one << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    Some(r)
}
