use ec_model::{bad_primes, check_hyp1, WeierstrassCurve};
use local_torsion::{torsion_dim_first_layer, Layer};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::IwasawaError;

/// Contribution s(ℓ)·dim E(L_w)[p] of one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectEntry {
    #[serde(with = "arith_core::serde_int")]
    pub ell: BigInt,
    pub s: u64,
    pub k: u32,
    pub layer: Layer,
    /// The first-layer dimension was inferred from the base dimension.
    pub shortcut: bool,
    pub dim: u32,
    pub contribution: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub curve: WeierstrassCurve,
    pub p: u32,
    pub bad: Vec<DefectEntry>,
    /// Primes above p of ordinary reduction; empty for supersingular curves over Q.
    pub ordinary: Vec<DefectEntry>,
    pub delta: u64,
    /// 2·Σ s(ℓ) over the bad primes.
    pub bound: u64,
}

/// δ(E) = Σ_{ℓ bad} s(ℓ)·dim E(L_w)[p].
pub fn defect(curve: &WeierstrassCurve, p: u32) -> Result<DefectReport, IwasawaError> {
    let verdict = check_hyp1(curve, p as u64);
    if !verdict.passed() {
        return Err(IwasawaError::Hypothesis(Box::new(verdict)));
    }
    let mut bad = Vec::new();
    for ell in bad_primes(curve)? {
        let split = cyclotomic::splitting_number(&ell, p)?;
        let s = split.s.to_u64().ok_or_else(|| IwasawaError::Overflow(ell.clone()))?;
        let tors = torsion_dim_first_layer(curve, p, &ell)?;
        bad.push(DefectEntry {
            ell,
            s,
            k: split.k,
            layer: tors.layer,
            shortcut: tors.shortcut,
            dim: tors.dim,
            contribution: s * tors.dim as u64,
        });
    }
    let delta = bad.iter().map(|e| e.contribution).sum();
    let bound = 2 * bad.iter().map(|e| e.s).sum::<u64>();
    Ok(DefectReport { curve: curve.clone(), p, bad, ordinary: Vec::new(), delta, bound })
}
