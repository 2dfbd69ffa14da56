use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// An element of Z_ℓ known modulo ℓ^prec.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    ell: BigInt,
    prec: u32,
    residue: BigInt,
}

impl PadicInt {
    /// Panics if `prec == 0`.
    pub fn new(ell: BigInt, prec: u32, value: &BigInt) -> Self {
        assert!(prec > 0, "precision must be positive");
        let m = ell.pow(prec);
        Self { residue: value.mod_floor(&m), ell, prec }
    }

    pub fn from_i64(ell: i64, prec: u32, value: i64) -> Self {
        Self::new(BigInt::from(ell), prec, &BigInt::from(value))
    }

    pub fn ell(&self) -> &BigInt {
        &self.ell
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Representative in `[0, ℓ^prec)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        self.ell.pow(self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// `None` when the element is zero to the known precision.
    pub fn valuation(&self) -> Option<u32> {
        if self.residue.is_zero() {
            None
        } else {
            arith_core::valuation(&self.residue, &self.ell).ok()
        }
    }

    /// Drops precision to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: u32) -> Self {
        if prec >= self.prec {
            self.clone()
        } else {
            Self::new(self.ell.clone(), prec, &self.residue)
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.ell, o.ell, "mixing different primes");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.ell.clone(), self.prec.min(o.prec), &(&self.residue + &o.residue))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.ell.clone(), self.prec.min(o.prec), &(&self.residue - &o.residue))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.ell.clone(), self.prec.min(o.prec), &(&self.residue * &o.residue))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.ell.clone(), self.prec, &-&self.residue)
    }

    /// Whether `n` lies in this residue class.
    pub fn is_congruent_to(&self, n: &BigInt) -> bool {
        (n - &self.residue).mod_floor(&self.modulus()).is_zero()
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.ell, self.prec)
    }
}
