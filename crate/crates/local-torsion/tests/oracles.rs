use std::path::PathBuf;

use ec_model::WeierstrassCurve;
use ff_poly::{ExtensionField, FiniteField, PrimeField};
use local_torsion::{
    division_polynomial, naive_torsion_count, torsion_dim_base, torsion_dim_first_layer, Layer,
    TorsionError,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use serde::Deserialize;

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_i64(a).unwrap()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[derive(Deserialize)]
struct Record {
    label: Option<String>,
    ainvs: WeierstrassCurve,
}

fn fixture_curves() -> Vec<Record> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/curves");
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| serde_json::from_str(&std::fs::read_to_string(e.unwrap().path()).unwrap()).unwrap())
        .collect()
}

fn fixture(label: &str) -> WeierstrassCurve {
    fixture_curves().into_iter().find(|r| r.label.as_deref() == Some(label)).unwrap().ainvs
}

/// Points of exact order p in E(F), by enumerating F and using the chord and
/// tangent law; F = F_q or F_{q^d}.
fn brute_torsion<F: FiniteField>(field: &F, elems: &[F::Elem], e: &WeierstrassCurve, p: u64) -> u64 {
    let a: Vec<F::Elem> = e.ainvs().iter().map(|c| field.from_int(c)).collect();
    let f = field;
    let eq = |x: &F::Elem, y: &F::Elem| f.is_zero(&f.sub(x, y));
    let on_curve = |x: &F::Elem, y: &F::Elem| {
        let lhs = f.add(&f.mul(y, y), &f.mul(y, &f.add(&f.mul(&a[0], x), &a[2])));
        let x2 = f.mul(x, x);
        let rhs = f.add(&f.add(&f.mul(&x2, x), &f.mul(&a[1], &x2)), &f.add(&f.mul(&a[3], x), &a[4]));
        eq(&lhs, &rhs)
    };
    type P<E> = Option<(E, E)>;
    let add = |p1: &P<F::Elem>, p2: &P<F::Elem>| -> P<F::Elem> {
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, q) => return q.clone(),
            (q, None) => return q.clone(),
            (Some(u), Some(v)) => (u, v),
        };
        let lam = if eq(x1, x2) {
            let den = f.add(&f.add(&f.add(y1, y1), &f.mul(&a[0], x1)), &a[2]);
            if f.is_zero(&f.add(&f.sub(y2, y1), &den)) {
                return None;
            }
            let three = f.from_int(&big(3));
            let two = f.from_int(&big(2));
            let num = f.sub(
                &f.add(&f.add(&f.mul(&three, &f.mul(x1, x1)), &f.mul(&two, &f.mul(&a[1], x1))), &a[3]),
                &f.mul(&a[0], y1),
            );
            f.mul(&num, &f.inv(&den).unwrap())
        } else {
            f.mul(&f.sub(y2, y1), &f.inv(&f.sub(x2, x1)).unwrap())
        };
        let nu = f.sub(y1, &f.mul(&lam, x1));
        let x3 = f.sub(&f.sub(&f.sub(&f.add(&f.mul(&lam, &lam), &f.mul(&a[0], &lam)), &a[1]), x1), x2);
        let y3 = f.sub(&f.sub(&f.neg(&f.mul(&f.add(&lam, &a[0]), &x3)), &nu), &a[2]);
        Some((x3, y3))
    };
    // Enumerate points: y from a table of square roots (odd q) or by trial (q even).
    let two = f.from_int(&big(2));
    let odd = !f.is_zero(&two);
    let mut sqrt_of = std::collections::HashMap::new();
    if odd {
        for y in elems {
            sqrt_of.insert(f.key(&f.mul(y, y)), y.clone());
        }
    }
    let mut points = Vec::new();
    for x in elems {
        if odd {
            let lin = f.add(&f.mul(&a[0], x), &a[2]);
            let x2 = f.mul(x, x);
            let rhs = f.add(&f.add(&f.mul(&x2, x), &f.mul(&a[1], &x2)), &f.add(&f.mul(&a[3], x), &a[4]));
            let disc = f.add(&f.mul(&lin, &lin), &f.mul(&f.from_int(&big(4)), &rhs));
            if let Some(r) = sqrt_of.get(&f.key(&disc)) {
                let half = f.inv(&two).unwrap();
                for s in [r.clone(), f.neg(r)] {
                    let y = f.mul(&f.sub(&s, &lin), &half);
                    assert!(on_curve(x, &y));
                    points.push((x.clone(), y));
                    if f.is_zero(r) {
                        break;
                    }
                }
            }
        } else {
            for y in elems {
                if on_curve(x, y) {
                    points.push((x.clone(), y.clone()));
                }
            }
        }
    }
    if !(points.len() as u64 + 1).is_multiple_of(p) {
        return 0;
    }
    let mut n = 0;
    for (x, y) in points {
        let pt = Some((x, y));
        let mut acc = pt.clone();
        for _ in 1..p {
            acc = add(&acc, &pt);
        }
        n += acc.is_none() as u64;
    }
    n
}

fn prime_field_elems(q: i64) -> (PrimeField, Vec<BigInt>) {
    ((PrimeField::new(big(q))), (0..q).map(big).collect())
}

fn ext_field_elems(q: i64, d: u32) -> (ExtensionField, Vec<ff_poly::ExtFieldElement>) {
    let f = ExtensionField::canonical(&big(q), d);
    let total = q.pow(d);
    let elems = (0..total)
        .map(|mut n| {
            let mut c = Vec::new();
            for _ in 0..d {
                c.push(big(n % q));
                n /= q;
            }
            f.from_coeffs(&c)
        })
        .collect();
    (f, elems)
}

fn log_p(p: u64, count: u64) -> u32 {
    let mut n = count + 1;
    let mut d = 0;
    while n > 1 {
        assert_eq!(n % p, 0);
        n /= p;
        d += 1;
    }
    d
}

#[test]
fn documented_division_polynomials() {
    let e = curve([0, 0, 0, -1, 0]);
    assert_eq!(division_polynomial(&e, 3).unwrap().coeffs, [-1, 0, -6, 0, 3].map(big));
    let e = curve([0, 0, 0, 0, 1]);
    assert_eq!(division_polynomial(&e, 3).unwrap().coeffs, [0, 12, 0, 0, 3].map(big));
    assert_eq!(division_polynomial(&e, 1).unwrap().coeffs, vec![big(1)]);
    assert_eq!(division_polynomial(&e, 4), Err(TorsionError::UnsupportedIndex(4)));
    assert_eq!(division_polynomial(&e, 15), Err(TorsionError::UnsupportedIndex(15)));
}

#[test]
fn division_polynomial_shape() {
    let e = curve([1, -1, 1, -3, 7]);
    for n in [1u32, 3, 5, 7, 9, 11, 13] {
        let psi = division_polynomial(&e, n).unwrap();
        assert_eq!(psi.degree() as u32, (n * n - 1) / 2);
        assert_eq!(psi.coeffs.last().unwrap(), &big(n as i64));
    }
}

#[test]
fn documented_naive_counts() {
    assert_eq!(naive_torsion_count(&curve([0, 0, 0, 0, 1]), 3, 5), Ok(2));
    assert_eq!(naive_torsion_count(&curve([0, 0, 0, -1, 0]), 3, 5), Ok(0));
    assert_eq!(naive_torsion_count(&curve([0, 0, 0, -1, 0]), 3, 7), Ok(0));
    assert!(matches!(naive_torsion_count(&curve([0, 0, 0, -1, 0]), 3, 2), Err(TorsionError::BadReduction(_))));
}

#[test]
fn documented_base_dimensions() {
    let d = torsion_dim_base(&fixture("18784b1"), 3, &big(587)).unwrap();
    assert_eq!((d.dim, d.count, d.layer), (1, 2, Layer::Base));
    assert_eq!(torsion_dim_base(&fixture("32a2"), 3, &big(2)).unwrap().dim, 0);
    assert_eq!(torsion_dim_base(&fixture("423872t1"), 3, &big(37)).unwrap().dim, 2);
    assert_eq!(torsion_dim_base(&curve([0, 0, 0, 0, 1]), 3, &big(5)).unwrap().dim, 1);
    assert_eq!(torsion_dim_base(&curve([0, 0, 0, 0, 1]), 3, &big(3)), Err(TorsionError::EllEqualsP));
}

#[test]
fn documented_first_layer() {
    let e = curve([0, 0, 0, 0, 1]);
    let d = torsion_dim_first_layer(&e, 3, &big(5)).unwrap();
    assert!(!d.shortcut);
    let (f, elems) = ext_field_elems(5, 3);
    assert_eq!(d.count, brute_torsion(&f, &elems, &e, 3));
    let d = torsion_dim_first_layer(&fixture("423872t1"), 3, &big(37)).unwrap();
    assert!(d.shortcut && d.dim == 2);
    let d = torsion_dim_first_layer(&fixture("32a2"), 3, &big(2)).unwrap();
    assert!(d.shortcut && d.dim == 0);
}

#[test]
fn naive_count_matches_enumeration() {
    for (a, q) in [([0, 0, 0, 0, 1], 5), ([1, -1, 1, -3, 7], 11), ([0, 1, 1, 0, 0], 7), ([1, 0, 1, 4, -6], 13)] {
        let e = curve(a);
        let (f, elems) = prime_field_elems(q);
        for p in [3u32, 5, 7] {
            if q as u32 == p || e.discriminant().is_multiple_of(&big(q)) {
                continue;
            }
            assert_eq!(naive_torsion_count(&e, p, q as u64).unwrap(), brute_torsion(&f, &elems, &e, p as u64));
        }
    }
}

#[test]
fn base_dimension_matches_naive_count_on_fixtures() {
    let ells: Vec<u64> = arith_core::primes_below(1000).into_iter().map(u64::from).collect();
    for r in fixture_curves() {
        for p in [3u32, 5] {
            for &ell in &ells {
                if ell == p as u64 || r.ainvs.discriminant().is_multiple_of(&big(ell as i64)) {
                    continue;
                }
                let naive = naive_torsion_count(&r.ainvs, p, ell).unwrap();
                let got = torsion_dim_base(&r.ainvs, p, &BigInt::from(ell)).unwrap();
                assert_eq!(got.dim, log_p(p as u64, naive), "{:?} p={p} ℓ={ell}", r.label);
            }
        }
    }
}

fn arb_curve() -> impl Strategy<Value = WeierstrassCurve> {
    (-2i64..3, -5i64..6, -2i64..3, -60i64..60, -300i64..300)
        .prop_filter_map("singular", |(a1, a2, a3, a4, a6)| WeierstrassCurve::from_i64([a1, a2, a3, a4, a6]).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn division_polynomial_vanishes_on_torsion(e in arb_curve(), n in prop::sample::select(vec![3u32, 5, 7]),
                                               q in prop::sample::select(vec![11i64, 13, 17, 19, 23])) {
        prop_assume!(!e.discriminant().is_multiple_of(&big(q)) && q as u32 != n);
        let psi = division_polynomial(&e, n).unwrap();
        let elems: Vec<BigInt> = (0..q).map(big).collect();
        let a: Vec<BigInt> = e.ainvs().to_vec();
        // Over F_q only x-coordinates of F_q-points can be compared.
        for x in &elems {
            for y in &elems {
                let lhs = y * y + &a[0] * x * y + &a[2] * y;
                let rhs = x * x * x + &a[1] * x * x + &a[3] * x + &a[4];
                if (lhs - rhs).is_multiple_of(&big(q)) {
                    let torsion = single_point_multiple(&e, q, (x.clone(), y.clone()), n as u64);
                    prop_assert_eq!(psi.eval(x).is_multiple_of(&big(q)), torsion, "x={}", x);
                }
            }
        }
    }

    #[test]
    fn base_dimension_matches_naive_count(e in arb_curve(), p in prop::sample::select(vec![3u32, 5, 7]),
                                          ell in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 29, 31, 61, 97])) {
        prop_assume!(ell != p as u64);
        let model = local_torsion::minimal_at(&e, &big(ell as i64));
        prop_assume!(!model.discriminant().is_multiple_of(&big(ell as i64)));
        let naive = naive_torsion_count(&e, p, ell).unwrap();
        let got = torsion_dim_base(&e, p, &BigInt::from(ell)).unwrap();
        prop_assert_eq!(got.count, naive);
        prop_assert_eq!(got.count + 1, (p as u64).pow(got.dim));
    }

    #[test]
    fn first_layer_matches_extension_enumeration(e in arb_curve(),
                                                 case in prop::sample::select(vec![(3u32, 2i64), (3, 5), (3, 7), (5, 2), (5, 3)])) {
        let (p, ell) = case;
        prop_assume!(!e.discriminant().is_multiple_of(&big(ell)));
        let base = torsion_dim_base(&e, p, &big(ell)).unwrap();
        let first = torsion_dim_first_layer(&e, p, &big(ell)).unwrap();
        prop_assert!(first.dim >= base.dim);
        prop_assert_eq!(first.layer, Layer::First);
        let (f, elems) = ext_field_elems(ell, p);
        prop_assert_eq!(first.count, brute_torsion(&f, &elems, &e, p as u64));
    }
}

/// Whether `[n](x, y) = O` in E(F_q).
fn single_point_multiple(e: &WeierstrassCurve, q: i64, pt: (BigInt, BigInt), n: u64) -> bool {
    let qb = big(q);
    let a: Vec<BigInt> = e.ainvs().iter().map(|c| c.mod_floor(&qb)).collect();
    let inv = |v: &BigInt| arith_core::mod_inverse(v, &qb).unwrap();
    let md = |v: BigInt| v.mod_floor(&qb);
    let add = |p1: &Option<(BigInt, BigInt)>, p2: &Option<(BigInt, BigInt)>| -> Option<(BigInt, BigInt)> {
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, q) | (q, None) => return q.clone(),
            (Some(u), Some(v)) => (u, v),
        };
        let lam = if x1 == x2 {
            let den = md(y1 * 2 + &a[0] * x1 + &a[2]);
            if md(y1 + y2 + &a[0] * x2 + &a[2]).is_zero() {
                return None;
            }
            md((x1 * x1 * 3 + &a[1] * x1 * 2 + &a[3] - &a[0] * y1) * inv(&den))
        } else {
            md((y2 - y1) * inv(&md(x2 - x1)))
        };
        let nu = md(y1 - &lam * x1);
        let x3 = md(&lam * &lam + &a[0] * &lam - &a[1] - x1 - x2);
        let y3 = md(-(&lam + &a[0]) * &x3 - nu - &a[2]);
        Some((x3, y3))
    };
    let start = Some(pt);
    let mut acc = start.clone();
    for _ in 1..n {
        acc = add(&acc, &start);
    }
    acc.is_none()
}
