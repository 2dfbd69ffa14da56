//! Integral models for the one-parameter families of supersingular curves
//! with a fixed residual representation at p = 3 and p = 5.

use std::collections::BTreeMap;

use ec_model::{EcError, WeierstrassCurve};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Model of the member with parameter `t` in the family indexed by `d`, for
/// p ∈ {3, 5}. `None` for other p.
pub fn family_curve(p: u32, d: i64, t: i64) -> Option<Result<WeierstrassCurve, EcError>> {
    match p {
        3 => Some(p3_curve(d, t)),
        5 => Some(p5_curve(d, t)),
        _ => None,
    }
}

fn p3_curve(d: i64, t: i64) -> Result<WeierstrassCurve, EcError> {
    let a = BigInt::from(-d);
    let t = BigInt::from(t);
    let t2 = &t * &t;
    let t4 = &t2 * &t2;
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let c4: BigInt = (&a3 * &t4 * 27 + &a2 * &t2 * 18 - &a) * 48;
    let lead: BigInt = &a2 * &a2 * &t4 * &t * 108;
    let c6: BigInt = (-lead - &a2 * &t * 4) * 864;
    WeierstrassCurve::short(-c4 * 27, -c6 * 54)
}

/// Homogeneous polynomial in (u, v): exponent of u ↦ coefficient; the v
/// exponent is implied by the degree.
#[derive(Clone, Debug)]
struct Form {
    deg: u32,
    c: BTreeMap<u32, BigInt>,
}

impl Form {
    fn du(&self) -> Form {
        let c = self
            .c
            .iter()
            .filter(|(i, _)| **i > 0)
            .map(|(i, c)| (i - 1, c * *i))
            .collect();
        Form { deg: self.deg - 1, c }
    }

    fn dv(&self) -> Form {
        let c = self
            .c
            .iter()
            .filter(|(i, _)| self.deg - **i > 0)
            .map(|(i, c)| (*i, c * (self.deg - i)))
            .collect();
        Form { deg: self.deg - 1, c }
    }

    fn mul(&self, o: &Form) -> Form {
        let mut c: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (i, x) in &self.c {
            for (j, y) in &o.c {
                *c.entry(i + j).or_default() += x * y;
            }
        }
        Form { deg: self.deg + o.deg, c }
    }

    fn sub(&self, o: &Form) -> Form {
        let mut c = self.c.clone();
        for (j, y) in &o.c {
            *c.entry(*j).or_default() -= y;
        }
        c.retain(|_, v| !v.is_zero());
        Form { deg: self.deg, c }
    }

    fn div_exact(&self, n: i64) -> Form {
        let n = BigInt::from(n);
        let c = self
            .c
            .iter()
            .map(|(i, x)| {
                assert!((x % &n).is_zero(), "inexact division");
                (*i, x / &n)
            })
            .collect();
        Form { deg: self.deg, c }
    }

    /// Value at (u, v) = (t, 1).
    fn at(&self, t: &BigInt) -> BigInt {
        let top = self.c.keys().last().copied().unwrap_or(0);
        (0..=top).rev().fold(BigInt::zero(), |acc, i| acc * t + self.c.get(&i).cloned().unwrap_or_default())
    }
}

fn p5_curve(d: i64, t: i64) -> Result<WeierstrassCurve, EcError> {
    let a = BigInt::from(d);
    let mut c = BTreeMap::new();
    // F = 4(v¹² + 55A u³v⁹ − 165A² u⁶v⁶ − 275A³ u⁹v³ + 25A⁴ u¹²)
    c.insert(0, BigInt::from(4));
    c.insert(3, &a * 220);
    c.insert(6, &a * &a * -660);
    c.insert(9, &a * &a * &a * -1100);
    c.insert(12, &a * &a * &a * &a * 100);
    let f = Form { deg: 12, c };
    let (fu, fv) = (f.du(), f.dv());
    let hess = fu.du().mul(&fv.dv()).sub(&fu.dv().mul(&fu.dv())).div_exact(121);
    let jac = fu.mul(&hess.dv()).sub(&fv.mul(&hess.du())).div_exact(20);
    let t = BigInt::from(t);
    let h = hess.at(&t);
    let tt = jac.at(&t);
    debug_assert!(!h.is_negative() || !h.is_zero());
    WeierstrassCurve::short(h * 27, -tt * 54)
}
