use arith_core::valuation;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Isomorphism, WeierstrassCurve};

/// Kraus' conditions for `(c4, c6)` to come from an integral model, at 2 and 3.
fn kraus(p: u32, c4: &BigInt, c6: &BigInt) -> bool {
    match p {
        3 => c6.is_zero() || valuation(c6, &BigInt::from(3)).unwrap() != 2,
        2 => {
            let m4 = c6.mod_floor(&BigInt::from(4));
            if m4 == BigInt::from(3) {
                return true;
            }
            let v4 = if c4.is_zero() { u32::MAX } else { valuation(c4, &BigInt::from(2)).unwrap() };
            let m32 = c6.mod_floor(&BigInt::from(32));
            v4 >= 4 && (m32.is_zero() || m32 == BigInt::from(8))
        }
        _ => true,
    }
}

/// The reduced integral model with the given `c4`, `c6` (Kraus conditions assumed).
fn from_c4_c6(c4: &BigInt, c6: &BigInt) -> [BigInt; 5] {
    let twelve = BigInt::from(12);
    let mut b2 = (-c6).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let b4 = (&b2 * &b2 - c4) / 24;
    let b2_cubed: BigInt = &b2 * &b2 * &b2;
    let b6: BigInt = (-b2_cubed + &b2 * &b4 * 36 - c6) / 216;
    let a1 = b2.mod_floor(&BigInt::from(2));
    let a3 = b6.mod_floor(&BigInt::from(2));
    let a2 = (&b2 - &a1) / 4;
    let a4 = (&b4 - &a1 * &a3) / 2;
    let a6 = (&b6 - &a3) / 4;
    [a1, a2, a3, a4, a6]
}

fn min_opt(a: u32, b: Option<u32>) -> u32 {
    b.map_or(a, |b| a.min(b))
}

/// Globally minimal reduced model together with the change of variables
/// taking `curve` to it.
pub fn minimal_model(curve: &WeierstrassCurve) -> (WeierstrassCurve, Isomorphism) {
    let (c4, c6) = (curve.c4(), curve.c6());
    let mut u = BigInt::one();
    for (p, e) in curve.discriminant_factorization().primes() {
        if e < 12 {
            continue;
        }
        let v4 = (!c4.is_zero()).then(|| valuation(c4, p).unwrap() / 4);
        let v6 = (!c6.is_zero()).then(|| valuation(c6, p).unwrap() / 6);
        let mut d = min_opt(min_opt(e / 12, v4), v6);
        let small = [2u32, 3].into_iter().find(|&q| p == &BigInt::from(q));
        if let Some(small) = small {
            while d > 0 {
                let q4 = c4 / p.pow(4 * d);
                let q6 = c6 / p.pow(6 * d);
                if kraus(small, &q4, &q6) {
                    break;
                }
                d -= 1;
            }
        }
        u *= p.pow(d);
    }
    let c4m = c4 / u.pow(4);
    let c6m = c6 / u.pow(6);
    let target = from_c4_c6(&c4m, &c6m);
    let iso = [u.clone(), -u.clone()]
        .into_iter()
        .filter_map(|u| connect(curve.ainvs(), &target, u))
        .max_by_key(|iso| iso.is_integral())
        .expect("models with equal c4, c6 are isomorphic");
    let min = WeierstrassCurve::new(target).expect("minimal model is nonsingular");
    (min, iso)
}

/// Solves for `r, s, t` with the given `u`; `None` if no such isomorphism exists.
fn connect(from: &[BigInt; 5], to: &[BigInt; 5], u: BigInt) -> Option<Isomorphism> {
    let q = |n: &BigInt| BigRational::from_integer(n.clone());
    let [a1, a2, a3, _, _] = from.clone().map(|x| q(&x));
    let [b1, b2, b3, _, _] = to.clone().map(|x| q(&x));
    let uq = q(&u);
    let two = q(&BigInt::from(2));
    let three = q(&BigInt::from(3));
    let s = (&uq * &b1 - &a1) / &two;
    let r = (&uq * &uq * &b2 - &a2 + &s * &a1 + &s * &s) / &three;
    let t = (&uq * &uq * &uq * &b3 - &a3 - &r * &a1) / &two;
    let iso = Isomorphism { u, r, s, t };
    let image = iso.apply(&from.clone().map(|x| q(&x)));
    (image == to.clone().map(|x| q(&x))).then_some(iso)
}

/// Whether the model is minimal at every prime.
pub fn is_minimal(curve: &WeierstrassCurve) -> bool {
    minimal_model(curve).1.u.abs().is_one()
}
