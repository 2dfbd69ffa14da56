use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Deterministic for n < 3.317e24 (Sorenson–Webster).
const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_ROUNDS: usize = 65;

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// Primes up to 10^6, computed once.
pub(crate) fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| primes_below(1_000_001))
}

/// Sieve of Eratosthenes: all primes `< n`.
pub fn primes_below(n: u32) -> Vec<u32> {
    let n = n as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let n1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    for &a in &WITNESSES {
        if !strong_probable_prime(n, &d, s, &BigUint::from(a)) {
            return false;
        }
    }
    let bound: BigUint = "3317044064679887385961981".parse().unwrap();
    if n < &bound {
        return true;
    }
    // Seed from the low bits of n so the answer is reproducible.
    let seed = n.iter_u64_digits().next().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    for _ in 0..EXTRA_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n1);
        if !strong_probable_prime(n, &d, s, &a) {
            return false;
        }
    }
    true
}

/// Miller–Rabin. Deterministic below 3.3·10^24; above that, 65 extra rounds
/// with seeded random bases.
pub fn is_prime(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => is_prime_big(&u),
        None => false,
    }
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c = if n < &BigInt::from(2) {
        BigInt::from(2)
    } else {
        n + 1
    };
    while !is_prime(&c) {
        c += 1;
    }
    c
}
