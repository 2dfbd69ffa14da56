use std::fmt;

use ec_model::{check_hyp1, HypOneVerdict, WeierstrassCurve};
use serde::Serialize;

use crate::{defect, DefectReport, IwasawaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoCalibration {
    pub p: u32,
    pub sign: Sign,
    pub reference: String,
    pub reference_lambda: u64,
    pub reference_delta: u64,
    pub rho: u64,
}

/// ρ± = λ± − δ for a reference curve with known λ± and μ± = 0.
pub fn calibrate_rho(
    reference: &DefectReport,
    reference_id: &str,
    lambda_plus: u64,
    lambda_minus: u64,
) -> Result<[RhoCalibration; 2], IwasawaError> {
    let one = |sign, lambda: u64| -> Result<RhoCalibration, IwasawaError> {
        let rho = lambda
            .checked_sub(reference.delta)
            .ok_or(IwasawaError::NegativeRho { sign, lambda, delta: reference.delta })?;
        Ok(RhoCalibration {
            p: reference.p,
            sign,
            reference: reference_id.to_string(),
            reference_lambda: lambda,
            reference_delta: reference.delta,
            rho,
        })
    };
    Ok([one(Sign::Plus, lambda_plus)?, one(Sign::Minus, lambda_minus)?])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedLambda {
    pub rho: u64,
    pub delta: u64,
    pub lambda: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuStatus {
    ZeroByPropagation,
    ZeroByReference,
    Unknown,
}

/// A computed value that disagrees with a recorded one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<String>,
    pub computed: u64,
    pub recorded: u64,
    pub source: String,
    /// Listed in the fixture as a known disagreement.
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub curve: WeierstrassCurve,
    pub p: u32,
    pub plus: SignedLambda,
    pub minus: SignedLambda,
    pub lambda_difference: i64,
    pub mu: MuStatus,
    pub calibration: [RhoCalibration; 2],
    pub defect: DefectReport,
    pub hypothesis: HypOneVerdict,
    pub discrepancies: Vec<Discrepancy>,
}

/// λ± = ρ± + δ(E), with μ± = 0 carried over from the reference.
pub fn predict_lambda(
    curve: &WeierstrassCurve,
    p: u32,
    calibration: &[RhoCalibration; 2],
) -> Result<LambdaReport, IwasawaError> {
    if calibration.iter().any(|c| c.p != p) {
        return Err(IwasawaError::Fixture("calibration prime differs from p".into()));
    }
    let hypothesis = check_hyp1(curve, p as u64);
    let defect = defect(curve, p)?;
    let signed = |c: &RhoCalibration| SignedLambda {
        rho: c.rho,
        delta: defect.delta,
        lambda: c.rho + defect.delta,
    };
    let plus = signed(&calibration[0]);
    let minus = signed(&calibration[1]);
    Ok(LambdaReport {
        curve: curve.clone(),
        p,
        lambda_difference: plus.lambda as i64 - minus.lambda as i64,
        plus,
        minus,
        mu: MuStatus::ZeroByPropagation,
        calibration: calibration.clone(),
        defect,
        hypothesis,
        discrepancies: Vec::new(),
    })
}
