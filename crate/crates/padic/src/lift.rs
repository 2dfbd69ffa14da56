use ff_poly::{poly, ExtFieldElement};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::unramified::{Elem, Ring};
use crate::{PadicError, PadicInt, UnramifiedExtElement, UnramifiedExtension};

/// Initial working precision in ℓ-adic digits.
pub const DEFAULT_PRECISION: u32 = 20;
/// How many times the working precision is doubled before giving up.
pub const MAX_DOUBLINGS: u32 = 2;
/// Bound on nested multiple-root recursion.
pub const MAX_DEPTH: u32 = 40;

const SPLIT_SEED: u64 = 0x1f2e3d4c;

/// A root found by [`lift_roots`], truncated to the requested precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedRoot {
    pub root: UnramifiedExtElement,
    /// Hensel's criterion `v(f(a)) > 2·v(f'(a))` holds at the returned
    /// approximation.
    pub certified: bool,
}

impl LiftedRoot {
    pub fn as_padic(&self) -> Option<PadicInt> {
        self.root.as_padic()
    }
}

/// All roots of the integer polynomial `f` (low to high) in the ring of
/// integers of the unramified extension of Q_ℓ of degree `d`, to precision `k`.
pub fn lift_roots(f: &[BigInt], ell: &BigInt, d: u32, k: u32) -> Result<Vec<LiftedRoot>, PadicError> {
    lift_roots_in(&UnramifiedExtension::new(ell, d), f, k)
}

/// As [`lift_roots`], over an explicitly constructed extension.
pub fn lift_roots_in(
    ext: &UnramifiedExtension,
    f: &[BigInt],
    k: u32,
) -> Result<Vec<LiftedRoot>, PadicError> {
    assert!(k > 0, "target precision must be positive");
    let mut f = f.to_vec();
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    if f.is_empty() {
        return Err(PadicError::ZeroPolynomial);
    }
    let mut w = DEFAULT_PRECISION.max(k + 1);
    let mut attempt = 0;
    loop {
        match attempt_at(ext, &f, k, w) {
            Ok(roots) => return Ok(roots),
            Err(PadicError::PrecisionExhausted { .. }) if attempt < MAX_DOUBLINGS => {
                attempt += 1;
                w *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn attempt_at(
    ext: &UnramifiedExtension,
    f: &[BigInt],
    k: u32,
    w: u32,
) -> Result<Vec<LiftedRoot>, PadicError> {
    let ring = Ring::new(ext.spec().clone(), w);
    let content = f
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| arith_core::valuation(c, ring.ell()).unwrap())
        .min()
        .unwrap();
    if content >= w {
        return Err(PadicError::PrecisionExhausted { depth: 0, precision: w });
    }
    let scaled: Vec<BigInt> = {
        let pe = ring.ell().pow(content);
        f.iter().map(|c| c / &pe).collect()
    };
    let fr: Vec<Elem> = f.iter().map(|c| ring.int(c)).collect();
    let top = ring.down(w - content);
    let g: Vec<Elem> = scaled.iter().map(|c| top.int(c)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let found = recurse(&top, &g, k, 0, &mut rng)?;

    let dfr = ring.derivative(&fr);
    let mut out = Vec::with_capacity(found.len());
    for (_, a) in found {
        let target = ring.down(k);
        let a_k = target.project(&a);
        let a_w = ring.project(&a_k);
        let v_f = ring.valuation(&ring.eval(&fr, &a_w));
        let v_df = ring.valuation(&ring.eval(&dfr, &a_w));
        let certified = match (v_f, v_df) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => a > 2 * b,
        };
        out.push(LiftedRoot { root: target.wrap(a_k), certified });
    }
    Ok(out)
}

/// Roots of `g` to precision `needed`, each paired with the ring it lives in.
fn recurse(
    ring: &Ring,
    g: &[Elem],
    needed: u32,
    depth: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(Ring, Elem)>, PadicError> {
    if depth > MAX_DEPTH {
        return Err(PadicError::PrecisionExhausted { depth, precision: ring.prec });
    }
    let field = &ring.spec.field;
    let mut gbar: Vec<ExtFieldElement> = g.iter().map(|c| ring.residue(c)).collect();
    gbar = poly::trim(field, gbar);
    if gbar.is_empty() {
        return Err(PadicError::PrecisionExhausted { depth, precision: ring.prec });
    }
    if gbar.len() == 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (rbar, mult) in poly::roots(field, &gbar, rng) {
        let r = ring.lift(&rbar);
        if mult == 1 {
            if ring.prec < needed {
                return Err(PadicError::PrecisionExhausted { depth, precision: ring.prec });
            }
            let a = newton(ring, g, r, needed);
            let down = ring.down(needed);
            let a = down.project(&a);
            out.push((down, a));
            continue;
        }
        let h = ring.shift_and_scale(g, &r);
        let v = h
            .iter()
            .filter_map(|c| ring.valuation(c))
            .min()
            .ok_or(PadicError::PrecisionExhausted { depth, precision: ring.prec })?;
        if v >= ring.prec {
            return Err(PadicError::PrecisionExhausted { depth, precision: ring.prec });
        }
        let sub_ring = ring.down(ring.prec - v);
        let pv = ring.ell().pow(v);
        let hs: Vec<Elem> = h
            .iter()
            .map(|c| sub_ring.project(&c.iter().map(|x| x / &pv).collect::<Vec<_>>()))
            .collect();
        let sub_needed = needed.saturating_sub(1).max(1);
        for (zr, z) in recurse(&sub_ring, &hs, sub_needed, depth + 1, rng)? {
            let out_ring = ring.down(zr.prec + 1);
            let lz = out_ring.scale_int(&out_ring.project(&z), ring.ell());
            let root = out_ring.add(&out_ring.project(&r), &lz);
            out.push((out_ring, root));
        }
    }
    Ok(out)
}

/// Newton iteration from a simple root of the reduction.
fn newton(ring: &Ring, g: &[Elem], mut a: Elem, needed: u32) -> Elem {
    let dg = ring.derivative(g);
    for _ in 0..64 {
        let ga = ring.eval(g, &a);
        if ring.valuation(&ga).is_none_or(|v| v >= needed) {
            break;
        }
        let inv = ring
            .inv_unit(&ring.eval(&dg, &a))
            .expect("derivative is a unit at a simple root");
        a = ring.sub(&a, &ring.mul(&ga, &inv));
    }
    a
}
