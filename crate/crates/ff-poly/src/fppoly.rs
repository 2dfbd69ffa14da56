use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{FiniteField, PrimeField};
use crate::poly;

/// Polynomial over F_p, coefficients low to high, reduced and trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl FpPoly {
    /// Reduces every coefficient mod `p` and drops trailing zeros.
    pub fn new(p: BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(&p)).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn from_i64(p: i64, coeffs: &[i64]) -> Self {
        Self::new(BigInt::from(p), coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(p: BigInt) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn x(p: BigInt) -> Self {
        Self::new(p, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        poly::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub(crate) fn field(&self) -> PrimeField {
        PrimeField::new(self.p.clone())
    }

    fn lift(&self, coeffs: Vec<BigInt>) -> Self {
        Self { p: self.p.clone(), coeffs }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.lift(poly::add(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lift(poly::sub(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn neg(&self) -> Self {
        let k = self.field();
        self.lift(self.coeffs.iter().map(|c| k.neg(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.lift(poly::mul(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn divrem(&self, o: &Self) -> (Self, Self) {
        let (q, r) = poly::divrem(&self.field(), &self.coeffs, &o.coeffs);
        (self.lift(q), self.lift(r))
    }

    pub fn rem(&self, o: &Self) -> Self {
        self.divrem(o).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        self.lift(poly::gcd(&self.field(), &self.coeffs, &o.coeffs))
    }

    pub fn monic(&self) -> Self {
        self.lift(poly::monic(&self.field(), &self.coeffs))
    }

    pub fn derivative(&self) -> Self {
        self.lift(poly::derivative(&self.field(), &self.coeffs))
    }

    pub fn pow_mod(&self, e: &BigInt, m: &Self) -> Self {
        self.lift(poly::pow_mod(&self.field(), &self.coeffs, e, &m.coeffs))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let k = self.field();
        poly::eval(&k, &self.coeffs, &k.from_int(x))
    }

    /// Inverse of `self` modulo `m` via the extended Euclidean algorithm.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let k = self.field();
        let (mut r0, mut r1) = (m.coeffs.clone(), poly::rem(&k, &self.coeffs, &m.coeffs));
        let (mut t0, mut t1): (Vec<BigInt>, Vec<BigInt>) = (Vec::new(), vec![BigInt::one()]);
        while !r1.is_empty() {
            let (q, r) = poly::divrem(&k, &r0, &r1);
            let t = poly::sub(&k, &t0, &poly::mul(&k, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = k.inv(&r0[0])?;
        Some(self.lift(poly::rem(&k, &poly::scale(&k, &t0, &c), &m.coeffs)))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if c.is_one() && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        write!(f, "{} (mod {})", terms.join(" + "), self.p)
    }
}
