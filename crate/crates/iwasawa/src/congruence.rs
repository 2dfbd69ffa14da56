use ec_model::{a_p, WeierstrassCurve};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvidence {
    pub ell: u64,
    pub a1: i64,
    pub a2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceVerdict {
    pub p: u32,
    pub bound: u64,
    pub congruent: bool,
    /// First prime with a_ℓ(E₁) ≢ a_ℓ(E₂) mod p.
    pub witness: Option<u64>,
    pub evidence: Vec<TraceEvidence>,
}

/// Compares a_ℓ mod p for primes ℓ ≤ `bound` of good reduction for both
/// curves, ℓ ≠ p. A necessary condition for E₁[p] ≅ E₂[p].
pub fn congruence_check(e1: &WeierstrassCurve, e2: &WeierstrassCurve, p: u32, bound: u64) -> CongruenceVerdict {
    let bound = bound.min(10_000);
    let mut evidence = Vec::new();
    let mut witness = None;
    for ell in arith_core::primes_below(bound as u32 + 1) {
        let ell = ell as u64;
        if ell == p as u64 {
            continue;
        }
        let (Ok(a1), Ok(a2)) = (a_p(e1, ell), a_p(e2, ell)) else {
            continue;
        };
        evidence.push(TraceEvidence { ell, a1, a2 });
        if (a1 - a2).rem_euclid(p as i64) != 0 {
            witness = Some(ell);
            break;
        }
    }
    CongruenceVerdict { p, bound, congruent: witness.is_none(), witness, evidence }
}
