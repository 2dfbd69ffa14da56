use std::sync::Arc;

use ff_poly::{ExtFieldElement, ExtensionField, FiniteField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::PadicInt;

#[derive(Debug)]
pub(crate) struct Spec {
    pub ell: BigInt,
    pub d: u32,
    /// Monic integer lift of the residue field modulus, low to high.
    pub h: Vec<BigInt>,
    pub field: ExtensionField,
}

/// The ring of integers of the unramified extension of degree `d` of Q_ℓ,
/// presented as Z_ℓ[X]/(h̃) with h̃ the trivial lift of the canonical
/// irreducible over F_ℓ.
#[derive(Debug, Clone)]
pub struct UnramifiedExtension {
    spec: Arc<Spec>,
}

/// Element of an [`UnramifiedExtension`], known modulo ℓ^prec.
#[derive(Debug, Clone)]
pub struct UnramifiedExtElement {
    spec: Arc<Spec>,
    prec: u32,
    coeffs: Vec<BigInt>,
}

impl PartialEq for UnramifiedExtElement {
    fn eq(&self, o: &Self) -> bool {
        self.spec.ell == o.spec.ell
            && self.spec.h == o.spec.h
            && self.prec == o.prec
            && self.coeffs == o.coeffs
    }
}

impl Eq for UnramifiedExtElement {}

impl UnramifiedExtension {
    pub fn new(ell: &BigInt, d: u32) -> Self {
        let field = ExtensionField::canonical(ell, d);
        let h = field.modulus().coeffs().to_vec();
        Self { spec: Arc::new(Spec { ell: ell.clone(), d, h, field }) }
    }

    pub fn ell(&self) -> &BigInt {
        &self.spec.ell
    }

    pub fn degree(&self) -> u32 {
        self.spec.d
    }

    pub fn residue_field(&self) -> &ExtensionField {
        &self.spec.field
    }

    pub fn defining_polynomial(&self) -> &[BigInt] {
        &self.spec.h
    }

    pub fn from_int(&self, n: &BigInt, prec: u32) -> UnramifiedExtElement {
        self.from_coeffs(std::slice::from_ref(n), prec)
    }

    pub fn from_coeffs(&self, c: &[BigInt], prec: u32) -> UnramifiedExtElement {
        Ring::new(self.spec.clone(), prec).element(c)
    }

    /// Teichmüller-free lift: residue coefficients taken as integers.
    pub fn lift_residue(&self, r: &ExtFieldElement, prec: u32) -> UnramifiedExtElement {
        self.from_coeffs(&r.coefficients(), prec)
    }

    pub(crate) fn spec(&self) -> &Arc<Spec> {
        &self.spec
    }
}

impl UnramifiedExtElement {
    pub fn ell(&self) -> &BigInt {
        &self.spec.ell
    }

    pub fn degree(&self) -> u32 {
        self.spec.d
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn extension(&self) -> UnramifiedExtension {
        UnramifiedExtension { spec: self.spec.clone() }
    }

    /// Coordinates in the power basis 1, X, …, X^(d−1).
    pub fn coefficients(&self) -> Vec<PadicInt> {
        self.coeffs
            .iter()
            .map(|c| PadicInt::new(self.spec.ell.clone(), self.prec, c))
            .collect()
    }

    pub(crate) fn raw(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The lifted modulus h̃ with coefficients as ℓ-adic integers at this
    /// element's precision.
    pub fn defining_polynomial(&self) -> Vec<PadicInt> {
        self.spec
            .h
            .iter()
            .map(|c| PadicInt::new(self.spec.ell.clone(), self.prec, c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Minimum coefficient valuation; `None` if zero to known precision.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| arith_core::valuation(c, &self.spec.ell).unwrap())
            .min()
    }

    pub fn residue(&self) -> ExtFieldElement {
        self.spec.field.from_coeffs(&self.coeffs)
    }

    /// The element as a plain ℓ-adic integer, if it lies in Z_ℓ.
    pub fn as_padic(&self) -> Option<PadicInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(PadicInt::new(self.spec.ell.clone(), self.prec, &self.coeffs[0]))
        } else {
            None
        }
    }

    pub fn truncate(&self, prec: u32) -> Self {
        Ring::new(self.spec.clone(), prec.min(self.prec)).element(&self.coeffs)
    }

    fn pair_ring(&self, o: &Self) -> Ring {
        assert!(Arc::ptr_eq(&self.spec, &o.spec) || self.spec.h == o.spec.h, "different rings");
        Ring::new(self.spec.clone(), self.prec.min(o.prec))
    }

    pub fn add(&self, o: &Self) -> Self {
        let r = self.pair_ring(o);
        r.wrap(r.add(&self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let r = self.pair_ring(o);
        r.wrap(r.sub(&self.coeffs, &o.coeffs))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = self.pair_ring(o);
        r.wrap(r.mul(&self.coeffs, &o.coeffs))
    }
}

/// Z_ℓ[X]/(h̃) modulo ℓ^prec, operating on raw coefficient vectors.
#[derive(Debug, Clone)]
pub(crate) struct Ring {
    pub spec: Arc<Spec>,
    pub prec: u32,
    pub modulus: BigInt,
}

pub(crate) type Elem = Vec<BigInt>;

impl Ring {
    pub fn new(spec: Arc<Spec>, prec: u32) -> Self {
        assert!(prec > 0, "precision must be positive");
        let modulus = spec.ell.pow(prec);
        Self { spec, prec, modulus }
    }

    pub fn d(&self) -> usize {
        self.spec.d as usize
    }

    pub fn ell(&self) -> &BigInt {
        &self.spec.ell
    }

    pub fn wrap(&self, coeffs: Elem) -> UnramifiedExtElement {
        UnramifiedExtElement { spec: self.spec.clone(), prec: self.prec, coeffs }
    }

    /// Reduces an arbitrary-length coefficient list into the ring.
    pub fn element(&self, c: &[BigInt]) -> UnramifiedExtElement {
        self.wrap(self.reduce(c.to_vec()))
    }

    pub fn reduce(&self, mut c: Vec<BigInt>) -> Elem {
        let d = self.d();
        // h̃ is monic: eliminate X^k for k ≥ d top-down.
        for k in (d..c.len()).rev() {
            let lead = std::mem::take(&mut c[k]);
            if lead.is_zero() {
                continue;
            }
            for j in 0..d {
                let t = &lead * &self.spec.h[j];
                c[k - d + j] -= t;
            }
        }
        c.resize(d, BigInt::zero());
        c.iter().map(|x| x.mod_floor(&self.modulus)).collect()
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.d()]
    }

    pub fn one(&self) -> Elem {
        self.int(&BigInt::one())
    }

    pub fn int(&self, n: &BigInt) -> Elem {
        self.reduce(vec![n.clone()])
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x - y).mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Elem {
        let mut c = vec![BigInt::zero(); 2 * self.d() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(c)
    }

    pub fn scale_int(&self, a: &[BigInt], n: &BigInt) -> Elem {
        a.iter().map(|x| (x * n).mod_floor(&self.modulus)).collect()
    }

    /// Minimum coefficient valuation, or `None` for zero.
    pub fn valuation(&self, a: &[BigInt]) -> Option<u32> {
        a.iter()
            .filter(|c| !c.is_zero())
            .map(|c| arith_core::valuation(c, self.ell()).unwrap())
            .min()
    }

    pub fn residue(&self, a: &[BigInt]) -> ExtFieldElement {
        self.spec.field.from_coeffs(a)
    }

    pub fn lift(&self, r: &ExtFieldElement) -> Elem {
        self.reduce(r.coefficients())
    }

    /// Inverse of a unit: invert the residue, then Newton `y ← y(2 − ay)`.
    pub fn inv_unit(&self, a: &[BigInt]) -> Option<Elem> {
        let k = &self.spec.field;
        let r0 = k.inv(&self.residue(a))?;
        let mut y = self.lift(&r0);
        let two = self.int(&BigInt::from(2));
        let mut known = 1;
        while known < self.prec {
            let ay = self.mul(a, &y);
            y = self.mul(&y, &self.sub(&two, &ay));
            known *= 2;
        }
        Some(y)
    }

    /// Same element viewed at lower precision.
    pub fn down(&self, prec: u32) -> Ring {
        Ring::new(self.spec.clone(), prec)
    }

    pub fn project(&self, a: &[BigInt]) -> Elem {
        a.iter().map(|c| c.mod_floor(&self.modulus)).collect()
    }

    /// Evaluate a polynomial with ring coefficients (low to high) by Horner.
    pub fn eval(&self, f: &[Elem], x: &[BigInt]) -> Elem {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &[Elem]) -> Vec<Elem> {
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale_int(c, &BigInt::from(i)))
            .collect()
    }

    /// Coefficients of `f(r + ℓ·x)`.
    pub fn shift_and_scale(&self, f: &[Elem], r: &[BigInt]) -> Vec<Elem> {
        // Taylor shift by repeated synthetic division.
        let mut c: Vec<Elem> = f.to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = self.mul(&c[j + 1], r);
                c[j] = self.add(&c[j], &t);
            }
        }
        let mut lp = BigInt::one();
        for coeff in c.iter_mut() {
            *coeff = self.scale_int(coeff, &lp);
            lp *= self.ell();
        }
        c
    }
}
