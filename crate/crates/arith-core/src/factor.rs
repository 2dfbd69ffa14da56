use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::prime::{is_prime_u64, small_primes};
use crate::is_prime;

/// Total Pollard–Brent iterations allowed per split attempt.
const RHO_CAP: u64 = 100_000_000;
const TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization, possibly with an unfactored composite cofactor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Factorization {
    primes: BTreeMap<BigInt, u32>,
    cofactor: Option<BigInt>,
}

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_primes<I: IntoIterator<Item = (BigInt, u32)>>(it: I) -> Self {
        let mut f = Self::new();
        for (p, e) in it {
            f.insert(p, e);
        }
        f
    }

    pub fn insert(&mut self, p: BigInt, e: u32) {
        if e > 0 {
            *self.primes.entry(p).or_insert(0) += e;
        }
    }

    fn push_cofactor(&mut self, c: BigInt) {
        self.cofactor = Some(match self.cofactor.take() {
            Some(old) => old * c,
            None => c,
        });
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    /// Unfactored part, if any. It is composite and has no factor below 10^6.
    pub fn cofactor(&self) -> Option<&BigInt> {
        self.cofactor.as_ref()
    }

    pub fn primes(&self) -> impl Iterator<Item = (&BigInt, u32)> {
        self.primes.iter().map(|(p, e)| (p, *e))
    }

    pub fn prime_list(&self) -> Vec<BigInt> {
        self.primes.keys().cloned().collect()
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.primes.get(p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty() && self.cofactor.is_none()
    }

    /// Product of all prime powers times the cofactor.
    pub fn value(&self) -> BigInt {
        let mut n = self.cofactor.clone().unwrap_or_else(BigInt::one);
        for (p, e) in &self.primes {
            n *= p.pow(*e);
        }
        n
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.primes.is_empty() && self.cofactor.is_none() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self
            .primes
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if let Some(c) = &self.cofactor {
            parts.push(format!("({c})"));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize)]
struct PrimePower {
    #[serde(with = "crate::serde_int")]
    prime: BigInt,
    exponent: u32,
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            factors: Vec<PrimePower>,
            complete: bool,
            #[serde(with = "crate::serde_int::option")]
            cofactor: Option<BigInt>,
        }
        Repr {
            factors: self
                .primes
                .iter()
                .map(|(p, e)| PrimePower { prime: p.clone(), exponent: *e })
                .collect(),
            complete: self.is_complete(),
            cofactor: self.cofactor.clone(),
        }
        .serialize(s)
    }
}

/// Factors `|n|`: trial division up to 10^6, perfect-power detection, then
/// Pollard–Brent. Anything that resists is left as a flagged cofactor.
///
/// Panics if `n == 0`.
pub fn factor(n: &BigInt) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Factorization::new();
    let mut m = n.abs().to_biguint().unwrap();
    for &p in small_primes() {
        let p64 = p as u64;
        if let Some(small) = m.to_u64() {
            if p64 * p64 > small {
                break;
            }
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.insert(BigInt::from(p), e);
        }
    }
    if m.is_one() {
        return out;
    }
    if let Some(small) = m.to_u64() {
        if small < TRIAL_BOUND * TRIAL_BOUND {
            out.insert(BigInt::from(small), 1);
            return out;
        }
    }
    split_large(BigInt::from(m), 1, &mut out);
    out
}

fn split_large(m: BigInt, mult: u32, out: &mut Factorization) {
    if m.is_one() {
        return;
    }
    if is_prime(&m) {
        out.insert(m, mult);
        return;
    }
    if let Some((root, k)) = perfect_power(&m) {
        split_large(root, mult * k, out);
        return;
    }
    match pollard_brent(&m) {
        Some(d) => {
            let q = &m / &d;
            split_large(d, mult, out);
            split_large(q, mult, out);
        }
        None => out.push_cofactor(m.pow(mult)),
    }
}

/// Returns `(r, k)` with `r^k = m` and `k` maximal, when `k > 1`.
fn perfect_power(m: &BigInt) -> Option<(BigInt, u32)> {
    let bits = m.bits() as u32;
    // Every factor exceeds 10^6 > 2^19, so k ≤ bits / 19.
    let kmax = (bits / 19).max(2);
    for k in (2..=kmax).rev() {
        let r = m.nth_root(k);
        if &r.pow(k) == m {
            return Some(match perfect_power(&r) {
                Some((rr, kk)) => (rr, k * kk),
                None => (r, k),
            });
        }
    }
    None
}

fn pollard_brent(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    if let Some(small) = n.to_u64() {
        if is_prime_u64(small) {
            return None;
        }
        return brent_u64(small).map(BigInt::from);
    }
    let n = n.to_biguint().unwrap();
    brent_big(&n).map(BigInt::from)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn brent_u64(n: u64) -> Option<u64> {
    let mut budget = RHO_CAP;
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        let block = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..block.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += block;
            }
            if budget <= r {
                return None;
            }
            budget -= r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn brent_big(n: &BigUint) -> Option<BigUint> {
    let mut budget = RHO_CAP;
    for c in 1..64u32 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let (mut r, mut q, mut g) = (1u64, BigUint::one(), BigUint::one());
        let mut x = y.clone();
        let mut ys = y.clone();
        let block = 128u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..block.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += block;
            }
            if budget <= r {
                return None;
            }
            budget -= r;
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}
