use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use padic::{
    is_square, is_square_ext, is_square_rational, lift_roots, solve_quadratic_in_y, sqrt,
    PadicError, PadicInt, UnramifiedExtension,
};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn deriv(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect()
}

fn val(x: &BigInt, ell: i64) -> Option<u32> {
    if x.is_zero() {
        None
    } else {
        Some(arith_core::valuation(x, &BigInt::from(ell)).unwrap())
    }
}

/// Roots of a squarefree `f` in Z_ℓ reduced mod ℓ^k, found by walking the
/// digit tree and stopping at a ball once Hensel's criterion isolates a
/// single root inside it.
fn tree_roots(f: &[BigInt], ell: i64, k: u32) -> Vec<i64> {
    let df = deriv(f);
    let mut out = Vec::new();
    let mut stack: Vec<(BigInt, u32)> = vec![(BigInt::zero(), 0)];
    while let Some((a, j)) = stack.pop() {
        assert!(j < 40, "oracle did not separate roots");
        let fa = eval(f, &a);
        let m = BigInt::from(ell).pow(j);
        if j > 0 && !fa.mod_floor(&m).is_zero() {
            continue;
        }
        if j >= k {
            if fa.is_zero() {
                out.push(a.mod_floor(&BigInt::from(ell).pow(k)).to_i64().unwrap());
                continue;
            }
            if let Some(vd) = val(&eval(&df, &a), ell) {
                let vf = val(&fa, ell).unwrap();
                if vf > 2 * vd && j > vd && vf - vd >= j {
                    out.push(a.mod_floor(&BigInt::from(ell).pow(k)).to_i64().unwrap());
                    continue;
                }
            }
        }
        for t in 0..ell {
            stack.push((&a + &m * t, j + 1));
        }
    }
    out.sort();
    out
}

fn lifted(f: &[BigInt], ell: i64, k: u32) -> Vec<i64> {
    let mut v: Vec<i64> = lift_roots(f, &BigInt::from(ell), 1, k)
        .unwrap()
        .iter()
        .map(|r| r.as_padic().unwrap().residue().to_i64().unwrap())
        .collect();
    v.sort();
    v
}

fn squarefree_over_q(f: &[i64]) -> bool {
    // Resultant-free check: gcd with the derivative over Q via a large prime.
    let p = BigInt::from(1_000_000_007i64);
    let fp = ff_poly::FpPoly::new(p.clone(), big(f));
    if fp.degree().unwrap_or(0) < 1 || fp.degree() != Some(f.len() - 1) {
        return false;
    }
    fp.gcd(&fp.derivative()).degree() == Some(0)
}

#[test]
fn documented_examples() {
    assert_eq!(lifted(&big(&[-2, 0, 1]), 7, 2), vec![10, 39]);
    assert!(lifted(&big(&[1, 0, 1]), 3, 5).is_empty());
    assert_eq!(lifted(&big(&[6, -7, 1]), 5, 2), vec![1, 6]);
}

#[test]
fn zero_polynomial_is_rejected() {
    assert_eq!(lift_roots(&big(&[0, 0]), &BigInt::from(3), 1, 2), Err(PadicError::ZeroPolynomial));
}

#[test]
fn clustered_roots_against_tree_search() {
    let cases: &[(&[i64], i64)] = &[
        (&[6, -7, 1], 5),
        (&[-2, 0, 1], 7),
        (&[-17, 0, 1], 2),
        (&[0, -1, 0, 1], 2),
        (&[0, -1, 0, 1], 3),
        (&[-1, 0, 0, 9], 3),
        (&[-27 * 28, 27 + 28, -1], 3),
        (&[-(1 + 243), 0, 1], 3),
        (&[-5, 0, 0, 0, 1], 5),
        (&[-7 * 100, 107, -1, 0], 2),
    ];
    for (f, ell) in cases {
        let f = big(f);
        assert_eq!(lifted(&f, *ell, 3), tree_roots(&f, *ell, 3), "f = {f:?}, ℓ = {ell}");
    }
}

#[test]
fn is_square_matches_squaring_table() {
    for ell in [2i64, 3, 5, 7] {
        let m = ell.pow(5);
        let squares: HashSet<i64> = (0..m).map(|y| (y * y) % m).collect();
        for x in 1..m {
            let px = PadicInt::from_i64(ell, 5, x);
            match is_square(&px) {
                Ok(b) => assert_eq!(b, squares.contains(&x), "ℓ={ell} x={x}"),
                Err(PadicError::InsufficientPrecision { .. }) => {
                    let v = px.valuation().unwrap();
                    let need = if ell == 2 { 3 } else { 1 };
                    assert!(v.is_multiple_of(2) && 5 - v < need);
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn rational_squares() {
    let b = |x: i64| BigInt::from(x);
    assert!(is_square_rational(&b(9), &b(4), &b(2)).unwrap());
    assert!(is_square_rational(&b(17), &b(1), &b(2)).unwrap());
    assert!(!is_square_rational(&b(3), &b(1), &b(2)).unwrap());
    assert!(is_square_rational(&b(1), &b(17), &b(2)).unwrap());
    assert!(!is_square_rational(&b(2), &b(1), &b(5)).unwrap());
    assert!(is_square_rational(&b(-1), &b(5), &b(5)).is_ok_and(|x| !x));
    assert!(is_square_rational(&b(-1), &b(1), &b(5)).unwrap());
    assert_eq!(is_square_rational(&b(0), &b(1), &b(5)), Err(PadicError::ZeroInput));
}

#[test]
fn extension_squares_match_squaring_table() {
    for (ell, d, prec) in [(2i64, 2u32, 4u32), (2, 3, 4), (3, 2, 3), (5, 2, 2)] {
        let ext = UnramifiedExtension::new(&BigInt::from(ell), d);
        let m = ell.pow(prec);
        let size = (m as usize).pow(d);
        let elems: Vec<_> = (0..size)
            .map(|mut i| {
                let c: Vec<BigInt> = (0..d)
                    .map(|_| {
                        let x = (i % m as usize) as i64;
                        i /= m as usize;
                        BigInt::from(x)
                    })
                    .collect();
                ext.from_coeffs(&c, prec)
            })
            .collect();
        let key = |e: &padic::UnramifiedExtElement| -> Vec<BigInt> {
            e.coefficients().iter().map(|c| c.residue().clone()).collect()
        };
        let squares: HashSet<Vec<BigInt>> = elems.iter().map(|e| key(&e.mul(e))).collect();
        let mut decided = 0;
        for x in elems.iter().filter(|e| !e.is_zero()) {
            match is_square_ext(x) {
                Ok(b) => {
                    decided += 1;
                    assert_eq!(b, squares.contains(&key(x)), "ℓ={ell} d={d} x={:?}", key(x));
                }
                Err(PadicError::InsufficientPrecision { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(decided > size / 2);
    }
}

#[test]
fn documented_square_examples() {
    assert!(is_square(&PadicInt::from_i64(7, 4, 2)).unwrap());
    assert!(!is_square(&PadicInt::from_i64(2, 8, 8)).unwrap());
    assert!(is_square(&PadicInt::from_i64(2, 8, 17)).unwrap());
    let ys = |a: i64, b: i64| -> Vec<BigInt> {
        let mut v: Vec<BigInt> = solve_quadratic_in_y(&PadicInt::from_i64(5, 6, a), &PadicInt::from_i64(5, 6, b))
            .unwrap()
            .iter()
            .map(|y| y.residue().clone())
            .collect();
        v.sort();
        v
    };
    assert_eq!(ys(0, 1), vec![BigInt::from(1), BigInt::from(5i64.pow(6) - 1)]);
    assert!(ys(0, 2).is_empty());
}

#[test]
fn quadratic_in_y_example() {
    let a = PadicInt::from_i64(7, 10, 1);
    let b = PadicInt::from_i64(7, 10, 0);
    let mut ys: Vec<BigInt> = solve_quadratic_in_y(&a, &b)
        .unwrap()
        .iter()
        .map(|y| y.residue().clone())
        .collect();
    ys.sort();
    assert_eq!(ys, vec![BigInt::zero(), BigInt::from(7).pow(10) - 1]);
    let none = solve_quadratic_in_y(&PadicInt::from_i64(3, 8, 0), &PadicInt::from_i64(3, 8, -1));
    assert!(none.unwrap().is_empty());
}

proptest! {
    #[test]
    fn lift_agrees_with_tree_search(
        coeffs in prop::collection::vec(-60i64..60, 2..5),
        lead in 1i64..4,
        ell in prop::sample::select(vec![2i64, 3, 5, 7, 11, 13]),
    ) {
        let mut f = coeffs;
        f.push(lead);
        prop_assume!(squarefree_over_q(&f));
        let fb = big(&f);
        prop_assert_eq!(lifted(&fb, ell, 3), tree_roots(&fb, ell, 3));
        for r in lift_roots(&fb, &BigInt::from(ell), 1, 6).unwrap() {
            if r.certified {
                let a = r.as_padic().unwrap();
                prop_assert!(val(&eval(&fb, a.residue()), ell).is_none_or(|v| v >= 6));
            }
        }
    }

    #[test]
    fn base_roots_embed_in_extension(
        coeffs in prop::collection::vec(-30i64..30, 2..5),
        ell in prop::sample::select(vec![2i64, 3, 5]),
    ) {
        let mut f = coeffs;
        f.push(1);
        prop_assume!(squarefree_over_q(&f));
        let fb = big(&f);
        let l = BigInt::from(ell);
        let base = lift_roots(&fb, &l, 1, 3).unwrap();
        let ext = lift_roots(&fb, &l, ell as u32, 3).unwrap();
        let mut pool: Vec<Option<BigInt>> =
            ext.iter().map(|r| r.as_padic().map(|p| p.residue().clone())).collect();
        for r in &base {
            let x = r.as_padic().unwrap().residue().clone();
            let pos = pool.iter().position(|y| y.as_ref() == Some(&x));
            prop_assert!(pos.is_some(), "root {} missing over the extension", x);
            pool.remove(pos.unwrap());
        }
        for r in &ext {
            let vals: Vec<BigInt> = r.root.coefficients().iter().map(|c| c.residue().clone()).collect();
            let m = l.pow(3);
            let h = UnramifiedExtension::new(&l, ell as u32);
            let rr = h.from_coeffs(&vals, 3);
            let mut acc = h.from_int(&BigInt::zero(), 3);
            for c in fb.iter().rev() {
                acc = acc.mul(&rr).add(&h.from_int(c, 3));
            }
            prop_assert!(acc.coefficients().iter().all(|c| (c.residue() % &m).is_zero()));
        }
    }

    #[test]
    fn sqrt_squares_back(
        x in 1i64..1_000_000,
        ell in prop::sample::select(vec![2i64, 3, 5, 7]),
        prec in 4u32..12,
    ) {
        let px = PadicInt::from_i64(ell, prec, x);
        if let Ok(Some(s)) = sqrt(&px) {
            let m = px.modulus();
            prop_assert!((s.residue() * s.residue() - px.residue()).mod_floor(&m).is_zero());
        }
    }

    #[test]
    fn quadratic_recovers_planted_root(
        y0 in -5000i64..5000,
        a in -5000i64..5000,
        ell in prop::sample::select(vec![2i64, 3, 5, 7]),
    ) {
        let prec = 12;
        let b = y0 * y0 + a * y0;
        let pa = PadicInt::from_i64(ell, prec, a);
        let pb = PadicInt::from_i64(ell, prec, b);
        if let Ok(ys) = solve_quadratic_in_y(&pa, &pb) {
            prop_assert_eq!(ys.len(), 2);
            prop_assert!(ys.iter().any(|y| y.is_congruent_to(&BigInt::from(y0))));
            for y in &ys {
                let r = y.residue();
                let e = r * r + r * BigInt::from(a) - BigInt::from(b);
                prop_assert!(e.mod_floor(&y.modulus()).is_zero());
            }
        }
    }
}
