//! Defects, ρ calibration and signed λ predictions for families of
//! supersingular elliptic curves with a common residual representation.

mod congruence;
mod defect;
mod family;
mod generate;
mod lambda;

pub use congruence::{congruence_check, CongruenceVerdict, TraceEvidence};
pub use defect::{defect, DefectEntry, DefectReport};
pub use family::{
    run_family, Comparison, CurveSource, FamilyFixture, FamilyMember, FamilyReport, MemberOutcome,
    MemberReport, Published, Resolver, ValueSource,
};
pub use generate::family_curve;
pub use lambda::{calibrate_rho, predict_lambda, Discrepancy, LambdaReport, MuStatus, RhoCalibration, Sign, SignedLambda};

use cyclotomic::SplittingError;
use ec_model::{EcError, HypOneVerdict};
use local_torsion::TorsionError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IwasawaError {
    #[error("hypothesis check failed: {}", .0.failures.join("; "))]
    Hypothesis(Box<HypOneVerdict>),
    #[error(transparent)]
    Curve(#[from] EcError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error("ρ{sign} = λ − δ = {lambda} − {delta} is negative")]
    NegativeRho { sign: Sign, lambda: u64, delta: u64 },
    #[error("splitting number at {0} does not fit in 64 bits")]
    Overflow(num_bigint::BigInt),
    #[error("invalid family fixture: {0}")]
    Fixture(String),
}
