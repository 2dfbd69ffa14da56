use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use arith_core::Factorization;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::EcError;

/// An integral long Weierstrass model
/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with its standard invariants.
#[derive(Debug, Clone)]
pub struct WeierstrassCurve {
    a: [BigInt; 5],
    inv: Invariants,
    disc_factors: OnceLock<Factorization>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(with = "arith_core::serde_int")]
    pub b2: BigInt,
    #[serde(with = "arith_core::serde_int")]
    pub b4: BigInt,
    #[serde(with = "arith_core::serde_int")]
    pub b6: BigInt,
    #[serde(with = "arith_core::serde_int")]
    pub b8: BigInt,
    #[serde(with = "arith_core::serde_int")]
    pub c4: BigInt,
    #[serde(with = "arith_core::serde_int")]
    pub c6: BigInt,
    #[serde(with = "arith_core::serde_int")]
    pub discriminant: BigInt,
}

impl Invariants {
    pub fn of(a: &[BigInt; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = a1 * a1 + a2 * 4;
        let b4 = a1 * a3 + a4 * 2;
        let b6 = a3 * a3 + a6 * 4;
        let b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - &b4 * 24;
        let b2_cubed: BigInt = &b2 * &b2 * &b2;
        let c6 = -b2_cubed + &b2 * &b4 * 36 - &b6 * 216;
        let b2b2b8: BigInt = &b2 * &b2 * &b8;
        let discriminant = -b2b2b8 - &b4 * &b4 * &b4 * 8 - &b6 * &b6 * 27 + &b2 * &b4 * &b6 * 9;
        Self { b2, b4, b6, b8, c4, c6, discriminant }
    }
}

impl WeierstrassCurve {
    pub fn new(a: [BigInt; 5]) -> Result<Self, EcError> {
        let inv = Invariants::of(&a);
        if inv.discriminant.is_zero() {
            return Err(EcError::Singular);
        }
        Ok(Self { a, inv, disc_factors: OnceLock::new() })
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self, EcError> {
        Self::new(a.map(BigInt::from))
    }

    /// `y² = x³ + a4·x + a6`.
    pub fn short(a4: BigInt, a6: BigInt) -> Result<Self, EcError> {
        Self::new([BigInt::zero(), BigInt::zero(), BigInt::zero(), a4, a6])
    }

    /// Accepts `[a1,a2,a3,a4,a6]` or the short form `[a4,a6]`; brackets optional.
    pub fn parse(s: &str) -> Result<Self, EcError> {
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body);
        let parts: Vec<BigInt> = body
            .split(',')
            .map(|t| arith_core::parse_int(t).ok_or_else(|| EcError::Parse(s.to_string())))
            .collect::<Result<_, _>>()?;
        match parts.len() {
            5 => Self::new(parts.try_into().unwrap()),
            2 => {
                let [a4, a6]: [BigInt; 2] = parts.try_into().unwrap();
                Self::short(a4, a6)
            }
            _ => Err(EcError::Parse(s.to_string())),
        }
    }

    pub fn ainvs(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn b2(&self) -> &BigInt {
        &self.inv.b2
    }
    pub fn b4(&self) -> &BigInt {
        &self.inv.b4
    }
    pub fn b6(&self) -> &BigInt {
        &self.inv.b6
    }
    pub fn b8(&self) -> &BigInt {
        &self.inv.b8
    }
    pub fn c4(&self) -> &BigInt {
        &self.inv.c4
    }
    pub fn c6(&self) -> &BigInt {
        &self.inv.c6
    }
    pub fn discriminant(&self) -> &BigInt {
        &self.inv.discriminant
    }

    pub fn j_invariant(&self) -> BigRational {
        let c4 = &self.inv.c4;
        BigRational::new(c4 * c4 * c4, self.inv.discriminant.clone())
    }

    /// Factorization of |Δ|, computed once.
    pub fn discriminant_factorization(&self) -> &Factorization {
        self.disc_factors
            .get_or_init(|| arith_core::factor(&self.inv.discriminant.abs()))
    }

    /// Applies `x = u²x' + r`, `y = u³y' + s·u²x' + t`.
    pub fn transform(&self, iso: &Isomorphism) -> Result<Self, EcError> {
        let a = iso.apply(&self.a.clone().map(BigRational::from_integer));
        let mut out: Vec<BigInt> = Vec::with_capacity(5);
        for c in a {
            if !c.is_integer() {
                return Err(EcError::NotIntegral);
            }
            out.push(c.to_integer());
        }
        Self::new(out.try_into().unwrap())
    }

    /// Integral change of variables with `u = 1`.
    pub(crate) fn rst(&self, r: &BigInt, s: &BigInt, t: &BigInt) -> Self {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + s * 2;
        let n2 = a2 - s * a1 + r * 3 - s * s;
        let n3 = a3 + r * a1 + t * 2;
        let n4 = a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        Self::new([n1, n2, n3, n4, n6]).expect("isomorphic model is nonsingular")
    }

    /// Divides a_i by u^i; caller guarantees divisibility.
    pub(crate) fn scale_down(&self, u: &BigInt) -> Self {
        let pows = [1u32, 2, 3, 4, 6];
        let a: Vec<BigInt> = self
            .a
            .iter()
            .zip(pows)
            .map(|(c, k)| {
                let (q, r) = c.div_rem(&u.pow(k));
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        Self::new(a.try_into().unwrap()).expect("scaled model is nonsingular")
    }
}

impl PartialEq for WeierstrassCurve {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a
    }
}

impl Eq for WeierstrassCurve {}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

impl FromStr for WeierstrassCurve {
    type Err = EcError;
    fn from_str(s: &str) -> Result<Self, EcError> {
        Self::parse(s)
    }
}

impl Serialize for WeierstrassCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        arith_core::serde_int::vec::serialize(&self.a, s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = arith_core::serde_int::vec::deserialize(d)?;
        let a: [BigInt; 5] = v
            .try_into()
            .map_err(|_| serde::de::Error::custom("expected five a-invariants"))?;
        Self::new(a).map_err(serde::de::Error::custom)
    }
}

/// Change of coordinates `(u, r, s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub u: BigInt,
    pub r: BigRational,
    pub s: BigRational,
    pub t: BigRational,
}

impl Isomorphism {
    pub fn identity() -> Self {
        Self {
            u: BigInt::one(),
            r: BigRational::zero(),
            s: BigRational::zero(),
            t: BigRational::zero(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.r.is_integer() && self.s.is_integer() && self.t.is_integer()
    }

    pub fn apply(&self, a: &[BigRational; 5]) -> [BigRational; 5] {
        let [a1, a2, a3, a4, a6] = a;
        let (r, s, t) = (&self.r, &self.s, &self.t);
        let u = BigRational::from_integer(self.u.clone());
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        let n1 = (a1 + &two * s) / &u;
        let n2 = (a2 - s * a1 + &three * r - s * s) / (&u * &u);
        let n3 = (a3 + r * a1 + &two * t) / (&u * &u * &u);
        let n4 = (a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t)
            / (&u * &u * &u * &u);
        let n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1)
            / (&u * &u * &u * &u * &u * &u);
        [n1, n2, n3, n4, n6]
    }
}

impl Serialize for Isomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Isomorphism", 4)?;
        st.serialize_field("u", &self.u.to_string())?;
        st.serialize_field("r", &self.r.to_string())?;
        st.serialize_field("s", &self.s.to_string())?;
        st.serialize_field("t", &self.t.to_string())?;
        st.end()
    }
}
