use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use ec_model::{check_hyp1, minimal_model, HypOneVerdict, WeierstrassCurve};
use serde::{Deserialize, Serialize};

use crate::{
    calibrate_rho, defect, family_curve, predict_lambda, Discrepancy, IwasawaError, LambdaReport, MuStatus,
    RhoCalibration,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueSource {
    Lmfdb,
    Literature,
}

/// Recorded invariants of a member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Published {
    pub source: ValueSource,
    pub lambda_plus: u64,
    pub lambda_minus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_plus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_minus: Option<u64>,
    /// Recorded splitting numbers, keyed by the prime.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub splitting: BTreeMap<String, u64>,
    /// The recorded values are known to disagree with the computation.
    #[serde(default)]
    pub known_discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ainvs: Option<WeierstrassCurve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published: Option<Published>,
}

impl FamilyMember {
    /// Label if present, else `t=<t>`.
    pub fn id(&self) -> String {
        match (&self.label, self.t) {
            (Some(l), _) => l.clone(),
            (None, Some(t)) => format!("t={t}"),
            (None, None) => "?".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFixture {
    pub p: u32,
    pub name: String,
    /// Family parameter used to generate members given only by `t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    /// Id of the reference member.
    pub reference: String,
    pub members: Vec<FamilyMember>,
}

impl FamilyFixture {
    pub fn from_json(s: &str) -> Result<Self, IwasawaError> {
        let f: Self = serde_json::from_str(s).map_err(|e| IwasawaError::Fixture(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    pub fn reference_member(&self) -> Option<&FamilyMember> {
        self.members.iter().find(|m| m.id() == self.reference)
    }

    pub fn validate(&self) -> Result<(), IwasawaError> {
        let bad = |m: String| Err(IwasawaError::Fixture(m));
        let Some(r) = self.reference_member() else {
            return bad(format!("reference {} is not a member", self.reference));
        };
        match &r.published {
            Some(pb) if pb.mu_plus == Some(0) && pb.mu_minus == Some(0) => {}
            _ => return bad("reference needs published λ± and μ± = 0".into()),
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in &self.members {
            if !seen.insert(m.id()) {
                return bad(format!("duplicate member {}", m.id()));
            }
            let generated = self.d.is_some() && m.t.is_some() && matches!(self.p, 3 | 5);
            if m.ainvs.is_none() && m.label.is_none() && !generated {
                return bad(format!("member {} has no equation, label or generator", m.id()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSource {
    Fixture,
    Resolved,
    Generated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Match,
    Discrepancy,
    Unpublished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MemberOutcome {
    Computed { comparison: Comparison, report: Box<LambdaReport> },
    Discarded { reasons: Vec<String>, verdict: HypOneVerdict },
    Failed { error: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_source: Option<CurveSource>,
    #[serde(flatten)]
    pub outcome: MemberOutcome,
}

impl MemberReport {
    pub fn lambda(&self) -> Option<&LambdaReport> {
        match &self.outcome {
            MemberOutcome::Computed { report, .. } => Some(report),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub p: u32,
    pub reference: String,
    pub calibration: [RhoCalibration; 2],
    pub members: Vec<MemberReport>,
    /// ρ⁺ − ρ⁻, which every member's λ⁺ − λ⁻ must equal.
    pub lambda_difference: i64,
    pub difference_constant: bool,
    pub warnings: Vec<String>,
}

/// Looks up a curve by label (e.g. through a cache or remote database).
pub type Resolver<'a> = dyn Fn(&str) -> Result<WeierstrassCurve, String> + Sync + 'a;

fn curve_of(
    fx: &FamilyFixture,
    m: &FamilyMember,
    resolve: &Resolver<'_>,
    warnings: &mut Vec<String>,
) -> Result<(WeierstrassCurve, CurveSource), String> {
    let generated = match (fx.d, m.t) {
        (Some(d), Some(t)) => family_curve(fx.p, d, t).map(|r| r.map_err(|e| e.to_string())),
        _ => None,
    };
    let (curve, source) = if let Some(a) = &m.ainvs {
        (a.clone(), CurveSource::Fixture)
    } else if let Some(l) = &m.label {
        match resolve(l) {
            Ok(c) => (c, CurveSource::Resolved),
            Err(e) => match &generated {
                Some(Ok(g)) => {
                    warnings.push(format!("{}: lookup failed ({e}); using the generated model", m.id()));
                    (g.clone(), CurveSource::Generated)
                }
                _ => return Err(e),
            },
        }
    } else {
        match generated {
            Some(g) => return g.map(|c| (c, CurveSource::Generated)),
            None => return Err("no equation available".into()),
        }
    };
    if source != CurveSource::Generated {
        if let Some(Ok(g)) = generated {
            if minimal_model(&g).0 != minimal_model(&curve).0 {
                warnings.push(format!("{}: recorded equation differs from the generated member", m.id()));
            }
        }
    }
    Ok((curve, source))
}

fn discrepancies(report: &LambdaReport, pb: &Published) -> Vec<Discrepancy> {
    let source = serde_json::to_value(pb.source).unwrap().as_str().unwrap().to_string();
    let mk = |quantity: &str, ell: Option<String>, computed, recorded| Discrepancy {
        quantity: quantity.to_string(),
        ell,
        computed,
        recorded,
        source: source.clone(),
        expected: pb.known_discrepancy,
    };
    let mut out = Vec::new();
    for (ell, &recorded) in &pb.splitting {
        if let Some(e) = report.defect.bad.iter().find(|e| e.ell.to_string() == *ell) {
            if e.s != recorded {
                out.push(mk("splitting_number", Some(ell.clone()), e.s, recorded));
            }
        }
    }
    if report.plus.lambda != pb.lambda_plus {
        out.push(mk("lambda_plus", None, report.plus.lambda, pb.lambda_plus));
    }
    if report.minus.lambda != pb.lambda_minus {
        out.push(mk("lambda_minus", None, report.minus.lambda, pb.lambda_minus));
    }
    out
}

fn run_member(
    fx: &FamilyFixture,
    m: &FamilyMember,
    calibration: &[RhoCalibration; 2],
    resolve: &Resolver<'_>,
) -> (MemberReport, Vec<String>) {
    let mut warnings = Vec::new();
    let mut rep = MemberReport {
        id: m.id(),
        t: m.t,
        label: m.label.clone(),
        curve_source: None,
        outcome: MemberOutcome::Failed { error: String::new() },
    };
    let curve = match curve_of(fx, m, resolve, &mut warnings) {
        Ok((c, src)) => {
            rep.curve_source = Some(src);
            c
        }
        Err(error) => {
            rep.outcome = MemberOutcome::Failed { error };
            return (rep, warnings);
        }
    };
    let verdict = check_hyp1(&curve, fx.p as u64);
    if !verdict.passed() {
        rep.outcome = MemberOutcome::Discarded { reasons: verdict.failures.clone(), verdict };
        return (rep, warnings);
    }
    rep.outcome = match predict_lambda(&curve, fx.p, calibration) {
        Ok(mut report) => {
            if m.id() == fx.reference {
                report.mu = MuStatus::ZeroByReference;
            }
            let comparison = match &m.published {
                None => Comparison::Unpublished,
                Some(pb) => {
                    report.discrepancies = discrepancies(&report, pb);
                    for d in report.discrepancies.iter().filter(|d| !d.expected) {
                        warnings.push(format!(
                            "{}: computed {} = {} but {} records {}",
                            m.id(),
                            d.quantity,
                            d.computed,
                            d.source,
                            d.recorded
                        ));
                    }
                    if report.discrepancies.is_empty() {
                        Comparison::Match
                    } else {
                        Comparison::Discrepancy
                    }
                }
            };
            MemberOutcome::Computed { comparison, report: Box::new(report) }
        }
        Err(e) => MemberOutcome::Failed { error: e.to_string() },
    };
    (rep, warnings)
}

/// Calibrates ρ± on the reference member, then predicts λ± for every member
/// on up to `parallel` threads. Output is in fixture order.
pub fn run_family(fx: &FamilyFixture, resolve: &Resolver<'_>, parallel: usize) -> Result<FamilyReport, IwasawaError> {
    fx.validate()?;
    let r = fx.reference_member().unwrap();
    let pb = r.published.as_ref().unwrap();
    let mut warnings = Vec::new();
    let (ref_curve, _) = curve_of(fx, r, resolve, &mut warnings)
        .map_err(|e| IwasawaError::Fixture(format!("reference {}: {e}", r.id())))?;
    let ref_defect = defect(&ref_curve, fx.p)?;
    let calibration = calibrate_rho(&ref_defect, &r.id(), pb.lambda_plus, pb.lambda_minus)?;

    let results: Mutex<Vec<Option<(MemberReport, Vec<String>)>>> = Mutex::new(vec![None; fx.members.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..parallel.max(1).min(fx.members.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= fx.members.len() {
                    break;
                }
                let out = run_member(fx, &fx.members[i], &calibration, resolve);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    let mut members = Vec::new();
    for (rep, w) in results.into_inner().unwrap().into_iter().map(Option::unwrap) {
        warnings.extend(w);
        members.push(rep);
    }
    let lambda_difference = calibration[0].rho as i64 - calibration[1].rho as i64;
    let difference_constant = members
        .iter()
        .filter_map(MemberReport::lambda)
        .all(|l| l.lambda_difference == lambda_difference);
    if !difference_constant {
        warnings.push("λ⁺ − λ⁻ is not constant across the family".into());
    }
    for m in &members {
        if let MemberOutcome::Failed { error } = &m.outcome {
            warnings.push(format!("{}: {error}", m.id));
        }
    }
    Ok(FamilyReport {
        name: fx.name.clone(),
        p: fx.p,
        reference: fx.reference.clone(),
        calibration,
        members,
        lambda_difference,
        difference_constant,
        warnings,
    })
}
