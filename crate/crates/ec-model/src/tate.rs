use std::fmt;

use arith_core::{mod_inverse, valuation};
use ff_poly::FpPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::WeierstrassCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionType {
    Good,
    MultiplicativeSplit,
    MultiplicativeNonsplit,
    Additive,
}

/// Kodaira symbol of the special fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

impl Kodaira {
    /// PARI's integer encoding, as used by LMFDB local data.
    pub fn pari_code(self) -> i64 {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(m) => 4 + m as i64,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IStar(m) => -1 - if m == 0 { 0 } else { 3 + m as i64 },
            Kodaira::IIStar => -2,
            Kodaira::IIIStar => -3,
            Kodaira::IVStar => -4,
        }
    }

    pub fn from_pari_code(k: i64) -> Option<Self> {
        Some(match k {
            1 => Kodaira::I(0),
            2 => Kodaira::II,
            3 => Kodaira::III,
            4 => Kodaira::IV,
            k if k > 4 => Kodaira::I((k - 4) as u32),
            -1 => Kodaira::IStar(0),
            -2 => Kodaira::IIStar,
            -3 => Kodaira::IIIStar,
            -4 => Kodaira::IVStar,
            k if k < -4 => Kodaira::IStar((-k - 4) as u32),
            _ => return None,
        })
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(m) => write!(f, "I{m}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(m) => write!(f, "I{m}*"),
            Kodaira::IIStar => write!(f, "II*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IVStar => write!(f, "IV*"),
        }
    }
}

impl std::str::FromStr for Kodaira {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "II*" => Kodaira::IIStar,
            "III*" => Kodaira::IIIStar,
            "IV*" => Kodaira::IVStar,
            _ => {
                let body = s.strip_prefix('I').ok_or_else(|| format!("bad Kodaira symbol {s}"))?;
                match body.strip_suffix('*') {
                    Some(m) => Kodaira::IStar(m.parse().map_err(|_| format!("bad Kodaira symbol {s}"))?),
                    None => Kodaira::I(body.parse().map_err(|_| format!("bad Kodaira symbol {s}"))?),
                }
            }
        })
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReductionData {
    #[serde(with = "arith_core::serde_int")]
    pub prime: BigInt,
    pub reduction_type: ReductionType,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    pub tamagawa: u32,
    /// v_ℓ of the minimal discriminant.
    pub discriminant_valuation: u32,
}

fn val(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        u32::MAX
    } else {
        valuation(n, p).unwrap()
    }
}

fn divides(p: &BigInt, n: &BigInt) -> bool {
    n.mod_floor(p).is_zero()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7a7e)
}

/// Whether `c2·X² + c1·X + c0` has a root mod `p`.
fn quad_has_root(c2: &BigInt, c1: &BigInt, c0: &BigInt, p: &BigInt) -> bool {
    let f = FpPoly::new(p.clone(), vec![c0.clone(), c1.clone(), c2.clone()]);
    if f.is_zero() {
        return true;
    }
    !ff_poly::roots_mod_prime(&f, &mut rng()).is_empty()
}

/// Number of distinct roots mod `p` of a monic cubic.
fn cubic_root_count(b: &BigInt, c: &BigInt, d: &BigInt, p: &BigInt) -> u32 {
    let f = FpPoly::new(p.clone(), vec![d.clone(), c.clone(), b.clone(), BigInt::one()]);
    ff_poly::roots_mod_prime(&f, &mut rng()).len() as u32
}

/// Tate's algorithm at the prime `p`, valid for every prime including 2 and 3.
/// Non-minimal input is minimalized at `p` along the way.
pub fn tate_local(curve: &WeierstrassCurve, p: &BigInt) -> LocalReductionData {
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let is2 = p == &two;
    let is3 = p == &three;
    let p2 = p * p;
    let p3 = &p2 * p;
    let p4 = &p3 * p;
    let half = if is2 { BigInt::zero() } else { mod_inverse(&two, p).unwrap() };
    let pmod = |x: BigInt| x.mod_floor(p);
    let mut e = curve.clone();
    loop {
        let vd = val(e.discriminant(), p);
        let done = |kodaira, rt, f, c| LocalReductionData {
            prime: p.clone(),
            reduction_type: rt,
            kodaira,
            conductor_exponent: f,
            tamagawa: c,
            discriminant_valuation: vd,
        };
        if vd == 0 {
            return done(Kodaira::I(0), ReductionType::Good, 0, 1);
        }
        // Move the singular point to (0, 0) mod p.
        let (b2, b4, b6) = (e.b2().clone(), e.b4().clone(), e.b6().clone());
        let (r, t) = if is2 {
            let (a2, a3, a4, a6) = (e.a2(), e.a3(), e.a4(), e.a6());
            if divides(p, &b2) {
                let r = pmod(a4.clone());
                let t = pmod(&r * (BigInt::one() + a2 + a4) + a6);
                (r, t)
            } else {
                let r = pmod(a3.clone());
                let t = pmod(&r + a4);
                (r, t)
            }
        } else if is3 {
            let r = if divides(p, &b2) { pmod(-&b6) } else { pmod(-(&b2 * &b4)) };
            let t = pmod(e.a1() * &r + e.a3());
            (r, t)
        } else {
            let c4 = e.c4();
            let r = if divides(p, c4) {
                pmod(-mod_inverse(&BigInt::from(12), p).unwrap() * &b2)
            } else {
                pmod(-mod_inverse(&(c4 * 12), p).unwrap() * (e.c6() + &b2 * c4))
            };
            let t = pmod(-&half * (e.a1() * &r + e.a3()));
            (r, t)
        };
        e = e.rst(&r, &BigInt::zero(), &t);

        if !divides(p, e.c4()) {
            let split = quad_has_root(&BigInt::one(), e.a1(), &-e.a2(), p);
            return if split {
                done(Kodaira::I(vd), ReductionType::MultiplicativeSplit, 1, vd)
            } else {
                let c = if vd.is_multiple_of(2) { 2 } else { 1 };
                done(Kodaira::I(vd), ReductionType::MultiplicativeNonsplit, 1, c)
            };
        }
        let add = ReductionType::Additive;
        if val(e.a6(), p) < 2 {
            return done(Kodaira::II, add, vd, 1);
        }
        if val(e.b8(), p) < 3 {
            return done(Kodaira::III, add, vd - 1, 2);
        }
        if val(e.b6(), p) < 3 {
            let c = if quad_has_root(&BigInt::one(), &(e.a3() / p), &-(e.a6() / &p2), p) { 3 } else { 1 };
            return done(Kodaira::IV, add, vd - 2, c);
        }
        // Arrange p | a1, a2; p² | a3, a4; p³ | a6.
        let (s, t) = if is2 {
            (pmod(e.a2().clone()), &two * pmod(e.a6() / 4))
        } else {
            (pmod(-e.a1() * &half), (-e.a3() * &half).mod_floor(&p2))
        };
        e = e.rst(&BigInt::zero(), &s, &t);

        let b = e.a2() / p;
        let c = e.a4() / &p2;
        let d = e.a6() / &p3;
        let w = &d * &d * 27 - &b * &b * &c * &c + &b * &b * &b * &d * 4 - &b * &c * &d * 18 + &c * &c * &c * 4;
        let x = &c * 3 - &b * &b;
        if !divides(p, &w) {
            let roots = cubic_root_count(&b, &c, &d, p);
            return done(Kodaira::IStar(0), add, vd - 4, 1 + roots);
        }
        if !divides(p, &x) {
            // Double root: move it to 0.
            let r0 = if is2 {
                c.clone()
            } else if is3 {
                &b * &c
            } else {
                (&b * &c - &d * 9) * mod_inverse(&(&x * 2), p).unwrap()
            };
            e = e.rst(&(p * pmod(r0)), &BigInt::zero(), &BigInt::zero());
            // Alternate between the quadratics Y² + a3,k+1·Y − a6,2k+2 and
            // a2,1·X² + a4,k+2·X + a6,2k+3 until one has distinct roots.
            let mut k = 1u32;
            let (m, cp) = loop {
                let my = p.pow(k + 1);
                let a3t = e.a3() / &my;
                let a6t = e.a6() / (&my * &my);
                if !divides(p, &(&a3t * &a3t + &a6t * 4)) {
                    let cp = if quad_has_root(&BigInt::one(), &a3t, &-&a6t, p) { 4 } else { 2 };
                    break (2 * k - 1, cp);
                }
                let root = if is2 { pmod(a6t) } else { pmod(-&a3t * &half) };
                e = e.rst(&BigInt::zero(), &BigInt::zero(), &(&my * root));
                let mx = p.pow(k + 2);
                let a2t = e.a2() / p;
                let a4t = e.a4() / &mx;
                let a6t = e.a6() / p.pow(2 * k + 3);
                if !divides(p, &(&a4t * &a4t - &a6t * &a2t * 4)) {
                    let cp = if quad_has_root(&a2t, &a4t, &a6t, p) { 4 } else { 2 };
                    break (2 * k, cp);
                }
                let root = if is2 {
                    pmod(&a6t * &a2t)
                } else {
                    pmod(-&a4t * mod_inverse(&(&a2t * 2), p).unwrap())
                };
                e = e.rst(&(&my * root), &BigInt::zero(), &BigInt::zero());
                k += 1;
            };
            return done(Kodaira::IStar(m), add, vd - m - 4, cp);
        }
        // Triple root: move it to 0.
        let r0 = if is3 { -&d } else { -&b * mod_inverse(&three, p).unwrap() };
        e = e.rst(&(p * pmod(r0)), &BigInt::zero(), &BigInt::zero());
        let x3t = e.a3() / &p2;
        let x6t = e.a6() / &p4;
        if !divides(p, &(&x3t * &x3t + &x6t * 4)) {
            let c = if quad_has_root(&BigInt::one(), &x3t, &-&x6t, p) { 3 } else { 1 };
            return done(Kodaira::IVStar, add, vd - 6, c);
        }
        let t0 = if is2 { x6t } else { &x3t * &half };
        let t = -&p2 * pmod(t0);
        e = e.rst(&BigInt::zero(), &BigInt::zero(), &t);
        if !divides(&p4, e.a4()) {
            return done(Kodaira::IIIStar, add, vd - 7, 2);
        }
        if !divides(&(&p3 * &p3), e.a6()) {
            return done(Kodaira::IIStar, add, vd - 8, 1);
        }
        // Not minimal at p.
        e = e.scale_down(p);
    }
}
