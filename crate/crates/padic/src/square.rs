use ff_poly::FiniteField;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::unramified::Ring;
use crate::{PadicError, PadicInt, UnramifiedExtElement};

fn unit_digits_needed(ell: &BigInt) -> u32 {
    if ell == &BigInt::from(2) {
        3
    } else {
        1
    }
}

/// Whether `x` is a square in Q_ℓ.
///
/// Needs the unit part to one digit (three for ℓ = 2); otherwise returns
/// [`PadicError::InsufficientPrecision`].
pub fn is_square(x: &PadicInt) -> Result<bool, PadicError> {
    let need = unit_digits_needed(x.ell());
    let v = x.valuation().ok_or(PadicError::InsufficientPrecision {
        needed: need,
        available: 0,
    })?;
    if v % 2 == 1 {
        return Ok(false);
    }
    let rem = x.precision() - v;
    if rem < need {
        return Err(PadicError::InsufficientPrecision { needed: need, available: rem });
    }
    let u = x.residue() / x.ell().pow(v);
    Ok(if need == 3 {
        (u % 8u32) == BigInt::one()
    } else {
        arith_core::jacobi(&u, x.ell()) == 1
    })
}

/// Whether the nonzero rational `num/den` is a square in Q_ℓ.
pub fn is_square_rational(num: &BigInt, den: &BigInt, ell: &BigInt) -> Result<bool, PadicError> {
    if num.is_zero() || den.is_zero() {
        return Err(PadicError::ZeroInput);
    }
    let vn = arith_core::valuation(num, ell).unwrap();
    let vd = arith_core::valuation(den, ell).unwrap();
    if (vn + vd) % 2 == 1 {
        return Ok(false);
    }
    let m = ell.pow(unit_digits_needed(ell));
    let un = num / ell.pow(vn);
    let ud = den / ell.pow(vd);
    let u = un * arith_core::mod_inverse(&ud, &m).unwrap();
    is_square(&PadicInt::new(ell.clone(), unit_digits_needed(ell), &u))
}

/// A square root of `x` when one exists, with the precision it is known to.
pub fn sqrt(x: &PadicInt) -> Result<Option<PadicInt>, PadicError> {
    if !is_square(x)? {
        return Ok(None);
    }
    let ell = x.ell();
    let v = x.valuation().unwrap();
    let half = v / 2;
    let rem = x.precision() - v;
    let u = x.residue() / ell.pow(v);
    let two = BigInt::from(2);
    let (s, s_prec) = if ell == &two {
        let mut s = BigInt::one();
        for j in 3..rem {
            let m = BigInt::one() << (j + 1);
            if !(&s * &s - &u).mod_floor(&m).is_zero() {
                s += BigInt::one() << (j - 1);
            }
        }
        (s, rem - 1)
    } else {
        let m = ell.pow(rem);
        let mut s = arith_core::sqrt_mod(&u, ell).expect("residue checked above");
        let mut known = 1;
        while known < rem {
            let inv = arith_core::mod_inverse(&(&s * 2), &m).expect("unit");
            s = (&s - (&s * &s - &u) * inv).mod_floor(&m);
            known *= 2;
        }
        (s, rem)
    };
    Ok(Some(PadicInt::new(ell.clone(), s_prec + half, &(s * ell.pow(half)))))
}

/// Solutions of `y² + A·y − B = 0` in Z_ℓ.
pub fn solve_quadratic_in_y(a: &PadicInt, b: &PadicInt) -> Result<Vec<PadicInt>, PadicError> {
    let ell = a.ell().clone();
    let four = PadicInt::new(ell.clone(), b.precision(), &BigInt::from(4));
    let disc = a.mul(a).add(&four.mul(b));
    let s = match sqrt(&disc)? {
        None => return Ok(Vec::new()),
        Some(s) => s,
    };
    let prec = s.precision().min(a.precision());
    let two = BigInt::from(2);
    let neg_a = a.neg().residue().clone();
    let roots = [&neg_a + s.residue(), &neg_a - s.residue()];
    let out = if ell == two {
        roots
            .iter()
            .map(|r| PadicInt::new(ell.clone(), prec - 1, &(r / 2)))
            .collect()
    } else {
        let m = ell.pow(prec);
        let inv2 = arith_core::mod_inverse(&two, &m).unwrap();
        roots
            .iter()
            .map(|r| PadicInt::new(ell.clone(), prec, &(r * &inv2)))
            .collect()
    };
    Ok(out)
}

/// Whether `x` is a square in the unramified extension it lives in.
pub fn is_square_ext(x: &UnramifiedExtElement) -> Result<bool, PadicError> {
    let ell = x.ell().clone();
    let need = unit_digits_needed(&ell);
    let v = x.valuation().ok_or(PadicError::InsufficientPrecision {
        needed: need,
        available: 0,
    })?;
    if v % 2 == 1 {
        return Ok(false);
    }
    let rem = x.precision() - v;
    if rem < need {
        return Err(PadicError::InsufficientPrecision { needed: need, available: rem });
    }
    let ext = x.extension();
    let ring = Ring::new(ext.spec().clone(), rem);
    let pv = ell.pow(v);
    let u: Vec<BigInt> = ring.project(&x.raw().iter().map(|c| c / &pv).collect::<Vec<_>>());
    let k = ext.residue_field();
    let ubar = ring.residue(&u);
    let q = k.order();
    if need == 1 {
        let e: BigInt = (&q - 1u32) / 2u32;
        return Ok(k.pow(&ubar, &e) == k.one());
    }
    // ℓ = 2: divide by the square of a lift of √ū, then u1 = 1 + 2w must have
    // w even and Tr(w/2 mod 2) = 0.
    let sbar = k.pow(&ubar, &(&q / 2u32));
    let s0 = ring.lift(&sbar);
    let s0_sq_inv = ring.inv_unit(&ring.mul(&s0, &s0)).expect("unit");
    let u1 = ring.mul(&u, &s0_sq_inv);
    let w: Vec<BigInt> = ring
        .sub(&u1, &ring.one())
        .iter()
        .map(|c| c / 2)
        .collect();
    if w.iter().any(|c| c.is_odd()) {
        return Ok(false);
    }
    let wbar = k.from_coeffs(&w.iter().map(|c| c / 2).collect::<Vec<_>>());
    let mut t = wbar.clone();
    let mut tr = wbar;
    for _ in 1..k.degree() {
        t = k.mul(&t, &t);
        tr = k.add(&tr, &t);
    }
    Ok(k.is_zero(&tr))
}
