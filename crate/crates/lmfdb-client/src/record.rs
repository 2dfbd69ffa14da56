use ec_model::{LocalReductionData, WeierstrassCurve};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Remote,
    Cache,
    Fixture,
}

/// Signed Iwasawa invariants at a supersingular prime. Absent values are
/// `None` on the record, never zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IwasawaData {
    pub p: u32,
    pub lambda_plus: u64,
    pub lambda_minus: u64,
    pub mu_plus: u64,
    pub mu_minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub label: String,
    pub ainvs: WeierstrassCurve,
    #[serde(with = "arith_core::serde_int")]
    pub conductor: BigInt,
    pub local_data: Vec<LocalReductionData>,
    #[serde(default)]
    pub torsion_structure: Vec<u64>,
    #[serde(default)]
    pub iwasawa: Option<IwasawaData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retrieved_at: Option<String>,
    pub source: Source,
}
