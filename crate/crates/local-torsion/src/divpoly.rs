use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use ec_model::WeierstrassCurve;

use crate::TorsionError;

/// Largest supported index.
pub const MAX_INDEX: u32 = 13;

/// ψ_n for odd n, as a polynomial in x (coefficients low to high).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisionPolynomial {
    pub n: u32,
    #[serde(with = "arith_core::serde_int::vec")]
    pub coeffs: Vec<BigInt>,
}

impl DivisionPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

type Poly = Vec<BigInt>;

fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn cube(a: &[BigInt]) -> Poly {
    mul(&mul(a, a), a)
}

/// The normalised sequence f_n = ψ_n (n odd), ψ_n/ψ_2 (n even), which lives
/// in Z[x]. Uses F = ψ_2² = 4x³ + b2x² + 2b4x + b6.
fn sequence(curve: &WeierstrassCurve, upto: usize) -> Vec<Poly> {
    let (b2, b4, b6, b8) = (curve.b2(), curve.b4(), curve.b6(), curve.b8());
    let int = |v: i64| BigInt::from(v);
    let f2sq: Poly = vec![b6.clone(), b4 * 2, b2.clone(), int(4)];
    let ff = mul(&f2sq, &f2sq);
    let mut f: Vec<Poly> = vec![
        vec![int(0)],
        vec![int(1)],
        vec![int(1)],
        vec![b8.clone(), b6 * 3, b4 * 3, b2.clone(), int(3)],
        vec![
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            b8 * 10,
            b6 * 10,
            b4 * 5,
            b2.clone(),
            int(2),
        ],
    ];
    for n in 5..=upto {
        let m = n / 2;
        let next = if n % 2 == 1 {
            if m % 2 == 0 {
                sub(&mul(&mul(&f[m + 2], &cube(&f[m])), &ff), &mul(&f[m - 1], &cube(&f[m + 1])))
            } else {
                sub(&mul(&f[m + 2], &cube(&f[m])), &mul(&mul(&f[m - 1], &cube(&f[m + 1])), &ff))
            }
        } else {
            let t1 = mul(&f[m + 2], &mul(&f[m - 1], &f[m - 1]));
            let t2 = mul(&f[m - 2], &mul(&f[m + 1], &f[m + 1]));
            mul(&f[m], &sub(&t1, &t2))
        };
        f.push(next);
    }
    f
}

/// ψ_n of the given model for odd `n ≤ 13`.
pub fn division_polynomial(curve: &WeierstrassCurve, n: u32) -> Result<DivisionPolynomial, TorsionError> {
    if n.is_multiple_of(2) || n > MAX_INDEX {
        return Err(TorsionError::UnsupportedIndex(n));
    }
    let coeffs = sequence(curve, n.max(4) as usize).swap_remove(n as usize);
    Ok(DivisionPolynomial { n, coeffs })
}
