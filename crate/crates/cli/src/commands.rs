use std::path::{Path, PathBuf};

use ec_model::{a_p, check_hyp1, conductor, local_data, minimal_model, WeierstrassCurve};
use iwasawa::{
    defect, predict_lambda, run_family, FamilyFixture, MemberOutcome, RhoCalibration, Sign,
};
use lmfdb_client::{cross_check, Client, ClientConfig, CurveRecord, LmfdbError};
use local_torsion::{torsion_dim_base, torsion_dim_first_layer};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, CurveArgs, CurveCommand, FamilyArgs, FamilyCommand, LayerArg, LambdaArgs, SplitArgs, TorsionArgs};
use crate::envelope::{ErrorInfo, ErrorKind, ReportEnvelope, Warning, WarningKind};

struct Failure(ErrorInfo);

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure(ErrorInfo { kind: ErrorKind::Usage, message: message.into() })
    }

    fn computation(message: impl ToString) -> Self {
        Failure(ErrorInfo { kind: ErrorKind::Computation, message: message.to_string() })
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    warnings: Vec<Warning>,
}

impl Ctx<'_> {
    fn client(&self, extra: Option<PathBuf>) -> Client {
        let mut config = ClientConfig::from_env(self.cli.offline);
        config.fixture_dirs = self.cli.fixtures.clone();
        config.fixture_dirs.extend(extra);
        Client::new(config)
    }

    fn warn(&mut self, kind: WarningKind, message: String, data: Option<Value>) {
        self.warnings.push(Warning { kind, message, data });
    }

    fn check_record(&mut self, rec: &CurveRecord) {
        for m in cross_check(rec) {
            let message = format!("{}: {} recorded {} but computed {}", rec.label, m.field, m.recorded, m.computed);
            self.warn(WarningKind::Mismatch, message, Some(to_value(&m)));
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize to JSON")
}

fn int_value(n: &BigInt) -> Value {
    arith_core::serde_int::serialize(n, serde_json::value::Serializer).expect("integers serialize")
}

fn lookup_failure(e: LmfdbError) -> Failure {
    match e {
        LmfdbError::MalformedLabel(_) => Failure::usage(e.to_string()),
        _ => Failure::computation(e),
    }
}

fn looks_like_ainvs(s: &str) -> bool {
    s.contains(',') || s.trim_start().starts_with('[')
}

fn resolve_curve(ctx: &mut Ctx<'_>, spec: &str) -> Result<(WeierstrassCurve, Option<CurveRecord>), Failure> {
    if looks_like_ainvs(spec) {
        let c = WeierstrassCurve::parse(spec).map_err(|e| Failure::usage(format!("--curve: {e}")))?;
        return Ok((c, None));
    }
    let rec = ctx.client(None).fetch_by_label(spec.trim()).map_err(lookup_failure)?;
    ctx.check_record(&rec);
    Ok((rec.ainvs.clone(), Some(rec)))
}

fn check_p(p: u32) -> Result<(), Failure> {
    if p < 3 || !arith_core::is_prime_u64(p as u64) {
        return Err(Failure::usage(format!("--p: {p} is not an odd prime")));
    }
    Ok(())
}

fn check_ell(ell: &BigInt, p: u32) -> Result<(), Failure> {
    if !arith_core::is_prime(ell) {
        return Err(Failure::usage(format!("--ell: {ell} is not a prime")));
    }
    if *ell == BigInt::from(p) {
        return Err(Failure::usage("--ell must differ from --p"));
    }
    Ok(())
}

fn curve_inputs(a: &CurveArgs) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("curve".into(), json!(a.curve));
    m.insert("p".into(), json!(a.p));
    m
}

fn curve_report(ctx: &mut Ctx<'_>, a: &CurveArgs) -> Result<Value, Failure> {
    check_p(a.p)?;
    let (curve, record) = resolve_curve(ctx, &a.curve)?;
    let (min, iso) = minimal_model(&curve);
    let n = conductor(&curve).map_err(Failure::computation)?;
    let local = local_data(&curve).map_err(Failure::computation)?;
    let disc = min.discriminant_factorization();
    if !disc.is_complete() {
        ctx.warn(WarningKind::Note, "discriminant factorization has an unfactored cofactor".into(), None);
    }
    let j = min.j_invariant();
    Ok(json!({
        "label": record.map(|r| r.label),
        "curve": curve,
        "invariants": curve.invariants(),
        "j_invariant": j.to_string(),
        "minimal_model": min,
        "isomorphism": iso,
        "minimal_discriminant": int_value(min.discriminant()),
        "discriminant_factorization": disc,
        "conductor": int_value(&n.value()),
        "conductor_factorization": n,
        "local_data": local,
        "a_p": a_p(&curve, a.p as u64).ok(),
        "hypothesis": check_hyp1(&curve, a.p as u64),
    }))
}

fn torsion(ctx: &mut Ctx<'_>, a: &TorsionArgs) -> Result<Value, Failure> {
    check_p(a.curve.p)?;
    check_ell(&a.ell, a.curve.p)?;
    let (curve, _) = resolve_curve(ctx, &a.curve.curve)?;
    let r = match a.layer {
        LayerArg::Base => torsion_dim_base(&curve, a.curve.p, &a.ell),
        LayerArg::First => torsion_dim_first_layer(&curve, a.curve.p, &a.ell),
    }
    .map_err(Failure::computation)?;
    Ok(to_value(&r))
}

fn split(ctx: &mut Ctx<'_>, a: &SplitArgs) -> Result<Value, Failure> {
    check_p(a.p)?;
    check_ell(&a.ell, a.p)?;
    let s = cyclotomic::splitting_number(&a.ell, a.p).map_err(Failure::computation)?;
    let oracle = match a.oracle_layers {
        None => Value::Null,
        Some(n) => {
            let seq = cyclotomic::splitting_number_oracle(&a.ell, a.p, n).map_err(|e| Failure::usage(format!("--oracle-layers: {e}")))?;
            let stable = n >= s.stable_from_layer;
            let last = *seq.last().expect("layer 0 is always present");
            let agrees = !stable || BigInt::from(last) == s.s;
            if !stable {
                ctx.warn(
                    WarningKind::Note,
                    format!("oracle stops at layer {n}, before the count stabilizes at layer {}", s.stable_from_layer),
                    None,
                );
            } else if !agrees {
                ctx.warn(
                    WarningKind::Mismatch,
                    format!("layer-count oracle gives {last} at layer {n} but s = {}", s.s),
                    None,
                );
            }
            json!({ "layers": n, "counts": seq, "stable": stable, "agrees": agrees })
        }
    };
    Ok(json!({ "splitting": s, "oracle": oracle }))
}

fn defect_cmd(ctx: &mut Ctx<'_>, a: &CurveArgs) -> Result<Value, Failure> {
    check_p(a.p)?;
    let (curve, _) = resolve_curve(ctx, &a.curve)?;
    defect(&curve, a.p).map(|d| to_value(&d)).map_err(Failure::computation)
}

fn given_calibration(p: u32, plus: u64, minus: u64) -> [RhoCalibration; 2] {
    let one = |sign, rho| RhoCalibration {
        p,
        sign,
        reference: "given".into(),
        reference_lambda: rho,
        reference_delta: 0,
        rho,
    };
    [one(Sign::Plus, plus), one(Sign::Minus, minus)]
}

fn lambda(ctx: &mut Ctx<'_>, a: &LambdaArgs) -> Result<Value, Failure> {
    check_p(a.curve.p)?;
    let (curve, _) = resolve_curve(ctx, &a.curve.curve)?;
    let cal = given_calibration(a.curve.p, a.rho_plus, a.rho_minus);
    predict_lambda(&curve, a.curve.p, &cal).map(|r| to_value(&r)).map_err(Failure::computation)
}

/// `<fixture>/../../curves`, where shipped family fixtures find their labels.
fn sibling_curves(fixture: &Path) -> Option<PathBuf> {
    let dir = fixture.parent()?.parent()?.join("curves");
    dir.is_dir().then_some(dir)
}

fn family_run(ctx: &mut Ctx<'_>, a: &FamilyArgs) -> Result<Value, Failure> {
    if a.parallel == 0 {
        return Err(Failure::usage("--parallel must be at least 1"));
    }
    let text = std::fs::read_to_string(&a.fixture)
        .map_err(|e| Failure::usage(format!("--fixture {}: {e}", a.fixture.display())))?;
    let fx = FamilyFixture::from_json(&text).map_err(Failure::computation)?;
    let client = ctx.client(sibling_curves(&a.fixture));
    let resolve = |label: &str| client.fetch_by_label(label).map(|r| r.ainvs).map_err(|e| e.to_string());
    let report = run_family(&fx, &resolve, a.parallel).map_err(Failure::computation)?;
    for w in &report.warnings {
        ctx.warn(WarningKind::Note, w.clone(), None);
    }
    for m in &report.members {
        match &m.outcome {
            MemberOutcome::Computed { report: r, .. } => {
                for d in &r.discrepancies {
                    let at = d.ell.as_ref().map(|l| format!(" at {l}")).unwrap_or_default();
                    let known = if d.expected { " (known)" } else { "" };
                    ctx.warn(
                        WarningKind::Discrepancy,
                        format!(
                            "{}: {}{at} computed {} but {} records {}{known}",
                            m.id, d.quantity, d.computed, d.source, d.recorded
                        ),
                        Some(json!({ "member": m.id, "discrepancy": d })),
                    );
                }
            }
            MemberOutcome::Discarded { reasons, .. } => {
                ctx.warn(WarningKind::Note, format!("{}: discarded ({})", m.id, reasons.join("; ")), None);
            }
            MemberOutcome::Failed { error } => {
                ctx.warn(WarningKind::Note, format!("{}: failed ({error})", m.id), None);
            }
        }
    }
    if !report.difference_constant {
        ctx.warn(
            WarningKind::Mismatch,
            format!("λ⁺ − λ⁻ is not constant {} across the computed members", report.lambda_difference),
            None,
        );
    }
    Ok(to_value(&report))
}

fn fetch(ctx: &mut Ctx<'_>, label: &str) -> Result<Value, Failure> {
    let rec = ctx.client(None).fetch_by_label(label).map_err(lookup_failure)?;
    ctx.check_record(&rec);
    Ok(to_value(&rec))
}

/// Runs one parsed command line to completion.
pub fn execute(cli: &Cli) -> ReportEnvelope {
    let mut ctx = Ctx { cli, warnings: Vec::new() };
    let (name, inputs, out) = match &cli.command {
        Command::Curve(CurveCommand::Report(a)) => ("curve report", curve_inputs(a), curve_report(&mut ctx, a)),
        Command::Torsion(a) => {
            let mut m = curve_inputs(&a.curve);
            m.insert("ell".into(), int_value(&a.ell));
            m.insert("layer".into(), json!(if a.layer == LayerArg::Base { "base" } else { "first" }));
            ("torsion", m, torsion(&mut ctx, a))
        }
        Command::Split(a) => {
            let mut m = Map::new();
            m.insert("ell".into(), int_value(&a.ell));
            m.insert("p".into(), json!(a.p));
            if let Some(n) = a.oracle_layers {
                m.insert("oracle_layers".into(), json!(n));
            }
            ("split", m, split(&mut ctx, a))
        }
        Command::Defect(a) => ("defect", curve_inputs(a), defect_cmd(&mut ctx, a)),
        Command::Lambda(a) => {
            let mut m = curve_inputs(&a.curve);
            m.insert("rho_plus".into(), json!(a.rho_plus));
            m.insert("rho_minus".into(), json!(a.rho_minus));
            ("lambda", m, lambda(&mut ctx, a))
        }
        Command::Family(FamilyCommand::Run(a)) => {
            let mut m = Map::new();
            m.insert("fixture".into(), json!(a.fixture.display().to_string()));
            m.insert("parallel".into(), json!(a.parallel));
            m.insert("offline".into(), json!(cli.offline));
            ("family run", m, family_run(&mut ctx, a))
        }
        Command::Fetch(a) => {
            let mut m = Map::new();
            m.insert("label".into(), json!(a.label));
            m.insert("offline".into(), json!(cli.offline));
            ("fetch", m, fetch(&mut ctx, &a.label))
        }
    };
    match out {
        Ok(result) => ReportEnvelope::ok(name, inputs, result, ctx.warnings),
        Err(Failure(e)) => ReportEnvelope::failed(name, inputs, e, ctx.warnings),
    }
}

