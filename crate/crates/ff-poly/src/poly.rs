//! Dense polynomial arithmetic over any [`FiniteField`]. Polynomials are
//! coefficient vectors, low degree first, with no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::RngCore;

use crate::field::FiniteField;

pub fn trim<F: FiniteField>(k: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: FiniteField>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n)
        .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(k, out)
}

pub fn sub<F: FiniteField>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n)
        .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(k, out)
}

pub fn mul<F: FiniteField>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

pub fn scale<F: FiniteField>(k: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

/// Quotient and remainder. Panics on division by zero.
pub fn divrem<F: FiniteField>(
    k: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = k.inv(&b[db]).expect("leading coefficient is invertible");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = k.mul(&r[i + db], &lead_inv);
        if !k.is_zero(&c) {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(k, q), trim(k, r))
}

pub fn rem<F: FiniteField>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(k, a, b).1
}

pub fn monic<F: FiniteField>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(k, a, &k.inv(l).expect("nonzero leading coefficient")),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<F: FiniteField>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// `base^e mod m`.
pub fn pow_mod<F: FiniteField>(
    k: &F,
    base: &[F::Elem],
    e: &BigInt,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let mut result = rem(k, &[k.one()], m);
    let mut b = rem(k, base, m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = rem(k, &mul(k, &result, &b), m);
        }
        if i + 1 < bits {
            b = rem(k, &mul(k, &b, &b), m);
        }
    }
    result
}

pub fn eval<F: FiniteField>(k: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

pub fn derivative<F: FiniteField>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(&k.from_int(&BigInt::from(i)), c))
        .collect();
    trim(k, out)
}

fn x_poly<F: FiniteField>(k: &F) -> Vec<F::Elem> {
    vec![k.zero(), k.one()]
}

/// Product of the distinct linear factors of `f`: `gcd(f, x^q − x)`.
pub fn linear_part<F: FiniteField>(k: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    let f = monic(k, f);
    if degree(&f).unwrap_or(0) == 0 {
        return vec![k.one()];
    }
    let xq = pow_mod(k, &x_poly(k), &k.order(), &f);
    gcd(k, &f, &sub(k, &xq, &x_poly(k)))
}

/// Splits a monic product of distinct linear factors into its roots.
fn split_linear<F: FiniteField>(
    k: &F,
    g: Vec<F::Elem>,
    rng: &mut dyn RngCore,
    out: &mut Vec<F::Elem>,
) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(k.neg(&g[0])),
        Some(dg) => {
            let q = k.order();
            let two = BigInt::from(2);
            loop {
                let delta = k.random(rng);
                let probe = if k.characteristic() == &two {
                    // Absolute trace of delta·x, as a polynomial mod g.
                    let mut t = trim(k, vec![k.zero(), delta]);
                    let mut acc = t.clone();
                    for _ in 1..k.degree() {
                        t = rem(k, &mul(k, &t, &t), &g);
                        acc = add(k, &acc, &t);
                    }
                    acc
                } else {
                    let shifted = vec![delta, k.one()];
                    let e: BigInt = (&q - 1u32).div_floor(&two);
                    sub(k, &pow_mod(k, &shifted, &e, &g), &[k.one()])
                };
                let h = gcd(k, &g, &probe);
                let dh = degree(&h).unwrap_or(0);
                if dh > 0 && dh < dg {
                    let (other, _) = divrem(k, &g, &h);
                    split_linear(k, h, rng, out);
                    split_linear(k, monic(k, &other), rng, out);
                    return;
                }
            }
        }
    }
}

/// Roots of `f` in the field `k` with multiplicities, sorted by
/// [`FiniteField::key`].
pub fn roots<F: FiniteField>(
    k: &F,
    f: &[F::Elem],
    rng: &mut dyn RngCore,
) -> Vec<(F::Elem, u32)> {
    assert!(!f.is_empty(), "roots of the zero polynomial");
    let lin = linear_part(k, f);
    let mut found = Vec::new();
    split_linear(k, lin, rng, &mut found);
    let mut out: Vec<(F::Elem, u32)> = found
        .into_iter()
        .map(|r| {
            let mut m = 0;
            let mut cur = f.to_vec();
            loop {
                let (q, rm) = divrem(k, &cur, &[k.neg(&r), k.one()]);
                if !rm.is_empty() {
                    break;
                }
                m += 1;
                cur = q;
            }
            (r, m)
        })
        .collect();
    out.sort_by_key(|(r, _)| k.key(r));
    out
}

/// Rabin's test: `x^(q^n) = x mod f` and `gcd(f, x^(q^(n/r)) − x) = 1` for
/// every prime `r | n`.
pub fn is_irreducible<F: FiniteField>(k: &F, f: &[F::Elem]) -> bool {
    let n = match degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n as u32,
    };
    let f = monic(k, f);
    let q = k.order();
    let x = x_poly(k);
    let frob_iter = |times: u32| {
        let mut t = x.clone();
        for _ in 0..times {
            t = pow_mod(k, &t, &q, &f);
        }
        t
    };
    if frob_iter(n) != rem(k, &x, &f) {
        return false;
    }
    for r in prime_divisors(n) {
        let t = frob_iter(n / r);
        let g = gcd(k, &f, &sub(k, &t, &x));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
