use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;

use crate::fppoly::FpPoly;

/// A finite field together with its element representation.
pub trait FiniteField: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn characteristic(&self) -> &BigInt;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    fn order(&self) -> BigInt {
        self.characteristic().pow(self.degree())
    }
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Coefficient vector over the prime field; used for canonical ordering.
    fn key(&self, a: &Self::Elem) -> Vec<BigInt>;

    fn pow(&self, a: &Self::Elem, e: &BigInt) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }
}

/// The prime field F_p; elements are residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: BigInt,
}

impl PrimeField {
    pub fn new(p: BigInt) -> Self {
        Self { p }
    }
}

impl FiniteField for PrimeField {
    type Elem = BigInt;

    fn characteristic(&self) -> &BigInt {
        &self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn order(&self) -> BigInt {
        self.p.clone()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one() % &self.p
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.p)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s < BigInt::zero() {
            s + &self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &self.p - a
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b % &self.p
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        arith_core::mod_inverse(a, &self.p)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigInt {
        rng.gen_bigint_range(&BigInt::zero(), &self.p)
    }
    fn key(&self, a: &BigInt) -> Vec<BigInt> {
        vec![a.clone()]
    }
}

/// F_{p^d} = F_p[x]/(h) for a monic irreducible `h` of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    modulus: Arc<FpPoly>,
}

/// Element of an [`ExtensionField`]: a residue of degree `< d` modulo `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtFieldElement {
    modulus: Arc<FpPoly>,
    residue: FpPoly,
}

impl ExtFieldElement {
    pub fn prime(&self) -> &BigInt {
        self.modulus.prime()
    }
    pub fn degree(&self) -> u32 {
        self.modulus.degree().unwrap_or(0) as u32
    }
    pub fn defining_polynomial(&self) -> &FpPoly {
        &self.modulus
    }
    pub fn residue(&self) -> &FpPoly {
        &self.residue
    }
    /// Coefficients of the residue, padded to length `d`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let d = self.degree() as usize;
        let mut c = self.residue.coeffs().to_vec();
        c.resize(d, BigInt::zero());
        c
    }
}

impl ExtensionField {
    /// Panics unless `h` is monic of degree ≥ 1. Irreducibility is the
    /// caller's responsibility; see [`crate::is_irreducible`].
    pub fn new(h: FpPoly) -> Self {
        assert!(h.degree().unwrap_or(0) >= 1 && h.is_monic(), "modulus must be monic");
        Self { modulus: Arc::new(h) }
    }

    /// The field defined by [`crate::canonical_irreducible`].
    pub fn canonical(p: &BigInt, d: u32) -> Self {
        Self::new(crate::canonical_irreducible(p, d))
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn element(&self, residue: FpPoly) -> ExtFieldElement {
        assert_eq!(residue.prime(), self.modulus.prime());
        ExtFieldElement { modulus: self.modulus.clone(), residue: residue.rem(&self.modulus) }
    }

    /// Element with the given coefficients (low to high) in the power basis.
    pub fn from_coeffs(&self, coeffs: &[BigInt]) -> ExtFieldElement {
        self.element(FpPoly::new(self.modulus.prime().clone(), coeffs.to_vec()))
    }

    /// The class of `x`.
    pub fn generator(&self) -> ExtFieldElement {
        self.from_coeffs(&[BigInt::zero(), BigInt::one()])
    }

    fn wrap(&self, residue: FpPoly) -> ExtFieldElement {
        ExtFieldElement { modulus: self.modulus.clone(), residue }
    }
}

impl FiniteField for ExtensionField {
    type Elem = ExtFieldElement;

    fn characteristic(&self) -> &BigInt {
        self.modulus.prime()
    }
    fn degree(&self) -> u32 {
        self.modulus.degree().unwrap() as u32
    }
    fn zero(&self) -> ExtFieldElement {
        self.wrap(FpPoly::zero(self.modulus.prime().clone()))
    }
    fn one(&self) -> ExtFieldElement {
        self.from_coeffs(&[BigInt::one()])
    }
    fn from_int(&self, n: &BigInt) -> ExtFieldElement {
        self.from_coeffs(std::slice::from_ref(n))
    }
    fn add(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.wrap(a.residue.add(&b.residue))
    }
    fn sub(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.wrap(a.residue.sub(&b.residue))
    }
    fn neg(&self, a: &ExtFieldElement) -> ExtFieldElement {
        self.wrap(a.residue.neg())
    }
    fn mul(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.wrap(a.residue.mul(&b.residue).rem(&self.modulus))
    }
    fn inv(&self, a: &ExtFieldElement) -> Option<ExtFieldElement> {
        a.residue.inverse_mod(&self.modulus).map(|r| self.wrap(r))
    }
    fn is_zero(&self, a: &ExtFieldElement) -> bool {
        a.residue.is_zero()
    }
    fn random(&self, rng: &mut dyn RngCore) -> ExtFieldElement {
        let p = self.modulus.prime();
        let coeffs = (0..self.degree())
            .map(|_| rng.gen_bigint_range(&BigInt::zero(), p))
            .collect();
        self.wrap(FpPoly::new(p.clone(), coeffs))
    }
    fn key(&self, a: &ExtFieldElement) -> Vec<BigInt> {
        let mut c = a.coefficients();
        c.reverse();
        c
    }
}
