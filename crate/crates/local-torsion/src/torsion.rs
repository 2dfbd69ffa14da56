use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use ec_model::{minimal_model, WeierstrassCurve};
use padic::{
    is_square_ext, lift_roots, lift_roots_in, solve_quadratic_in_y, PadicError, PadicInt,
    UnramifiedExtElement, UnramifiedExtension,
};

use crate::{division_polynomial, TorsionError};

/// Root precisions tried in turn when a square test runs out of digits.
const PRECISIONS: [u32; 4] = [8, 24, 64, 160];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Base,
    First,
}

/// dim_{F_p} E(K)[p] together with the count it was read off from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionDimension {
    #[serde(with = "arith_core::serde_int")]
    pub ell: BigInt,
    pub p: u32,
    pub layer: Layer,
    pub dim: u32,
    /// Points of exact order p.
    pub count: u64,
    /// True when the first-layer value was inferred from the base value.
    pub shortcut: bool,
    /// Root precision (ℓ-adic digits) at which the count was decided.
    pub precision: u32,
}

fn check_primes(p: u32, ell: &BigInt) -> Result<(), TorsionError> {
    if p < 3 || !arith_core::is_prime_u64(p as u64) {
        return Err(TorsionError::InvalidPrime(BigInt::from(p)));
    }
    if !arith_core::is_prime(ell) {
        return Err(TorsionError::InvalidPrime(ell.clone()));
    }
    if *ell == BigInt::from(p) {
        return Err(TorsionError::EllEqualsP);
    }
    Ok(())
}

/// A model that is minimal at `ell`.
pub fn minimal_at(curve: &WeierstrassCurve, ell: &BigInt) -> WeierstrassCurve {
    match arith_core::valuation(curve.discriminant(), ell) {
        Ok(v) if v < 12 => curve.clone(),
        _ => minimal_model(curve).0,
    }
}

fn dim_from_count(p: u32, count: u64) -> Result<u32, TorsionError> {
    let p = p as u64;
    match count {
        0 => Ok(0),
        c if c == p - 1 => Ok(1),
        c if c == p * p - 1 => Ok(2),
        c => Err(TorsionError::InvalidCount(c)),
    }
}

/// ψ_p of the model, after checking that its roots are ℓ-integral.
fn integral_psi(model: &WeierstrassCurve, p: u32, ell: &BigInt) -> Result<Vec<BigInt>, TorsionError> {
    let psi = division_polynomial(model, p)?;
    // Leading coefficient p is an ℓ-unit, so every root over Q̄_ℓ is integral.
    let lead = psi.coeffs.last().unwrap();
    if lead.is_multiple_of(ell) {
        return Err(TorsionError::NonIntegralRoot);
    }
    Ok(psi.coeffs)
}

fn retry<T>(mut f: impl FnMut(u32) -> Result<T, PadicError>) -> Result<(T, u32), TorsionError> {
    let mut last = None;
    for k in PRECISIONS {
        match f(k) {
            Ok(v) => return Ok((v, k)),
            Err(e @ PadicError::InsufficientPrecision { .. }) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.unwrap().into())
}

/// dim_{F_p} E(Q_ℓ)[p] from the Z_ℓ-roots of ψ_p.
pub fn torsion_dim_base(curve: &WeierstrassCurve, p: u32, ell: &BigInt) -> Result<TorsionDimension, TorsionError> {
    check_primes(p, ell)?;
    let model = minimal_at(curve, ell);
    let psi = integral_psi(&model, p, ell)?;
    let a = model.ainvs();
    let (count, precision) = retry(|k| {
        let mut count = 0u64;
        for r in lift_roots(&psi, ell, 1, k)? {
            let x = r.as_padic().expect("degree-one root");
            let c = |n: &BigInt| PadicInt::new(ell.clone(), k, n);
            let lin = c(&a[0]).mul(&x).add(&c(&a[2]));
            let rhs = x.add(&c(&a[1])).mul(&x).add(&c(&a[3])).mul(&x).add(&c(&a[4]));
            count += solve_quadratic_in_y(&lin, &rhs)?.len() as u64;
        }
        Ok(count)
    })?;
    Ok(TorsionDimension {
        ell: ell.clone(),
        p,
        layer: Layer::Base,
        dim: dim_from_count(p, count)?,
        count,
        shortcut: false,
        precision,
    })
}

/// dim_{F_p} E(L)[p] for L the unramified extension of Q_ℓ of degree p.
pub fn torsion_dim_first_layer(
    curve: &WeierstrassCurve,
    p: u32,
    ell: &BigInt,
) -> Result<TorsionDimension, TorsionError> {
    let base = torsion_dim_base(curve, p, ell)?;
    if base.dim != 1 {
        return Ok(TorsionDimension { layer: Layer::First, shortcut: true, ..base });
    }
    let model = minimal_at(curve, ell);
    let psi = integral_psi(&model, p, ell)?;
    let ext = UnramifiedExtension::new(ell, p);
    let a = model.ainvs();
    let (count, precision) = retry(|k| {
        let mut count = 0u64;
        for r in lift_roots_in(&ext, &psi, k)? {
            let x: &UnramifiedExtElement = &r.root;
            let c = |n: &BigInt| ext.from_int(n, k);
            let lin = c(&a[0]).mul(x).add(&c(&a[2]));
            let rhs = x.add(&c(&a[1])).mul(x).add(&c(&a[3])).mul(x).add(&c(&a[4]));
            let disc = lin.mul(&lin).add(&c(&BigInt::from(4)).mul(&rhs));
            if is_square_ext(&disc)? {
                count += 2;
            }
        }
        Ok(count)
    })?;
    Ok(TorsionDimension {
        ell: ell.clone(),
        p,
        layer: Layer::First,
        dim: dim_from_count(p, count)?,
        count,
        shortcut: false,
        precision,
    })
}

/// Points of exact order `p` in Ẽ(F_ℓ), by enumerating the group.
pub fn naive_torsion_count(curve: &WeierstrassCurve, p: u32, ell: u64) -> Result<u64, TorsionError> {
    let ellb = BigInt::from(ell);
    if !arith_core::is_prime_u64(ell) || ell > 1 << 31 {
        return Err(TorsionError::InvalidPrime(ellb));
    }
    let model = minimal_at(curve, &ellb);
    if (model.discriminant() % &ellb).is_zero() {
        return Err(TorsionError::BadReduction(ellb));
    }
    let a = model.ainvs().clone().map(|c| c.mod_floor(&ellb).to_u64().unwrap());
    let g = Group { a, q: ell };
    let points = g.points();
    // Cauchy: no element of order p unless p divides the group order.
    if !(points.len() as u64 + 1).is_multiple_of(p as u64) {
        return Ok(0);
    }
    Ok(points.into_iter().filter(|&pt| g.mul(pt, p as u64).is_none()).count() as u64)
}

type Pt = Option<(u64, u64)>;

struct Group {
    a: [u64; 5],
    q: u64,
}

impl Group {
    fn m(&self, x: u64, y: u64) -> u64 {
        x * y % self.q
    }
    fn s(&self, x: u64, y: u64) -> u64 {
        (x + self.q - y) % self.q
    }
    fn inv(&self, x: u64) -> u64 {
        let (mut r0, mut r1, mut s0, mut s1) = (self.q as i64, x as i64, 0i64, 1i64);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (s0, s1) = (s1, s0 - k * s1);
        }
        s0.rem_euclid(self.q as i64) as u64
    }

    fn points(&self) -> Vec<Pt> {
        let q = self.q;
        let [a1, a2, a3, a4, a6] = self.a;
        let mut out = Vec::new();
        let mut root: Vec<Option<u64>> = vec![None; q as usize];
        for y in 0..q {
            root[(y * y % q) as usize] = Some(y);
        }
        let half = self.inv(2 % q);
        for x in 0..q {
            let lin = (self.m(a1, x) + a3) % q;
            let rhs = (self.m(self.m(x, x), x) + self.m(a2, self.m(x, x)) + self.m(a4, x) + a6) % q;
            if q == 2 {
                for y in 0..2 {
                    if (y * y + lin * y) % 2 == rhs {
                        out.push(Some((x, y)));
                    }
                }
                continue;
            }
            let disc = (self.m(lin, lin) + 4 * rhs) % q;
            if let Some(r) = root[disc as usize] {
                out.push(Some((x, self.m(self.s(r, lin), half))));
                if r != 0 {
                    out.push(Some((x, self.m(self.s(q - r, lin), half))));
                }
            }
        }
        out
    }

    fn add(&self, p1: Pt, p2: Pt) -> Pt {
        let [a1, a2, a3, a4, _] = self.a;
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, q) => return q,
            (p, None) => return p,
            (Some(u), Some(v)) => (u, v),
        };
        let q = self.q;
        let lambda = if x1 == x2 {
            if (y1 + y2 + self.m(a1, x2) + a3).is_multiple_of(q) {
                return None;
            }
            let num = self.s((3 * self.m(x1, x1) + 2 * self.m(a2, x1) + a4) % q, self.m(a1, y1));
            let den = (2 * y1 + self.m(a1, x1) + a3) % q;
            self.m(num, self.inv(den))
        } else {
            self.m(self.s(y2, y1), self.inv(self.s(x2, x1)))
        };
        let nu = self.s(y1, self.m(lambda, x1));
        let x3 = self.s(self.s(self.s((self.m(lambda, lambda) + self.m(a1, lambda)) % q, a2), x1), x2);
        let y3 = self.s(self.s(q - self.m((lambda + a1) % q, x3), nu), a3) % q;
        Some((x3, y3))
    }

    fn mul(&self, pt: Pt, mut n: u64) -> Pt {
        let (mut acc, mut base) = (None, pt);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }
}
