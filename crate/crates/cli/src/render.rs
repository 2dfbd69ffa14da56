//! Human-readable rendering. Everything here reads the serialized envelope,
//! so the text and `--json` forms cannot drift apart.

use std::fmt::Write;

use serde_json::Value;

use crate::envelope::ReportEnvelope;

fn txt(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(txt).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

fn at<'a>(v: &'a Value, ptr: &str) -> &'a Value {
    v.pointer(ptr).unwrap_or(&Value::Null)
}

fn factorization(v: &Value) -> String {
    let mut parts: Vec<String> = at(v, "/factors")
        .as_array()
        .map(|fs| {
            fs.iter()
                .map(|f| match at(f, "/exponent").as_u64() {
                    Some(1) => txt(at(f, "/prime")),
                    _ => format!("{}^{}", txt(at(f, "/prime")), txt(at(f, "/exponent"))),
                })
                .collect()
        })
        .unwrap_or_default();
    if let Some(c) = v.get("cofactor").filter(|c| !c.is_null()) {
        parts.push(format!("{} (unfactored)", txt(c)));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn local_table(out: &mut String, rows: &Value) {
    let Some(rows) = rows.as_array() else { return };
    let _ = writeln!(out, "  {:<14} {:<24} {:<8} {:>3} {:>3} {:>5}", "prime", "reduction", "kodaira", "f", "c", "v(Δ)");
    for d in rows {
        let _ = writeln!(
            out,
            "  {:<14} {:<24} {:<8} {:>3} {:>3} {:>5}",
            txt(at(d, "/prime")),
            txt(at(d, "/reduction_type")),
            txt(at(d, "/kodaira")),
            txt(at(d, "/conductor_exponent")),
            txt(at(d, "/tamagawa")),
            txt(at(d, "/discriminant_valuation")),
        );
    }
}

fn curve_report(out: &mut String, r: &Value, p: &str) {
    if let Some(l) = r.get("label").filter(|l| !l.is_null()) {
        let _ = writeln!(out, "label         {}", txt(l));
    }
    let _ = writeln!(out, "curve         {}", txt(at(r, "/curve")));
    let _ = writeln!(out, "minimal model {}  (u = {})", txt(at(r, "/minimal_model")), txt(at(r, "/isomorphism/u")));
    let _ = writeln!(out, "c4, c6        {}, {}", txt(at(r, "/invariants/c4")), txt(at(r, "/invariants/c6")));
    let _ = writeln!(
        out,
        "discriminant  {} = {}",
        txt(at(r, "/minimal_discriminant")),
        factorization(at(r, "/discriminant_factorization"))
    );
    let _ = writeln!(out, "j-invariant   {}", txt(at(r, "/j_invariant")));
    let _ = writeln!(out, "conductor     {} = {}", txt(at(r, "/conductor")), factorization(at(r, "/conductor_factorization")));
    let _ = writeln!(out, "a_{p:<11} {}", txt(at(r, "/a_p")));
    hypothesis(out, at(r, "/hypothesis"));
    let _ = writeln!(out, "local data");
    local_table(out, at(r, "/local_data"));
}

fn hypothesis(out: &mut String, h: &Value) {
    let failures: Vec<String> = at(h, "/failures").as_array().map(|a| a.iter().map(txt).collect()).unwrap_or_default();
    if failures.is_empty() {
        let _ = writeln!(out, "hypothesis    holds at p = {} (supersingular, a_p = 0)", txt(at(h, "/p")));
    } else {
        let _ = writeln!(out, "hypothesis    fails at p = {}: {}", txt(at(h, "/p")), failures.join("; "));
    }
}

fn torsion(out: &mut String, r: &Value) {
    let field = if at(r, "/layer").as_str() == Some("first") { "L_w" } else { "Q_ℓ" };
    let _ = writeln!(
        out,
        "dim_F{} E({field})[{}] = {}   (ℓ = {}, {} points of order p, precision {})",
        txt(at(r, "/p")),
        txt(at(r, "/p")),
        txt(at(r, "/dim")),
        txt(at(r, "/ell")),
        txt(at(r, "/count")),
        txt(at(r, "/precision")),
    );
    if at(r, "/shortcut").as_bool() == Some(true) {
        let _ = writeln!(out, "  first-layer value read off from the base dimension");
    }
}

fn split(out: &mut String, r: &Value) {
    let s = at(r, "/splitting");
    let _ = writeln!(
        out,
        "s({}) = {}   (p = {}, k = v_p(ℓ^(p-1) - 1) = {}, stable from layer {})",
        txt(at(s, "/ell")),
        txt(at(s, "/s")),
        txt(at(s, "/p")),
        txt(at(s, "/k")),
        txt(at(s, "/stable_from_layer")),
    );
    let o = at(r, "/oracle");
    if !o.is_null() {
        let _ = writeln!(out, "layer counts  {}", txt(at(o, "/counts")));
    }
}

fn defect(out: &mut String, r: &Value) {
    let _ = writeln!(out, "curve {}  p = {}", txt(at(r, "/curve")), txt(at(r, "/p")));
    let _ = writeln!(out, "  {:<14} {:>8} {:>3} {:<6} {:>4} {:>13}", "ell", "s", "k", "layer", "dim", "contribution");
    for e in at(r, "/bad").as_array().into_iter().flatten() {
        let layer = format!("{}{}", txt(at(e, "/layer")), if at(e, "/shortcut").as_bool() == Some(true) { "*" } else { "" });
        let _ = writeln!(
            out,
            "  {:<14} {:>8} {:>3} {:<6} {:>4} {:>13}",
            txt(at(e, "/ell")),
            txt(at(e, "/s")),
            txt(at(e, "/k")),
            layer,
            txt(at(e, "/dim")),
            txt(at(e, "/contribution")),
        );
    }
    let _ = writeln!(out, "δ = {}   (bound 2·Σs = {})", txt(at(r, "/delta")), txt(at(r, "/bound")));
}

fn lambda(out: &mut String, r: &Value) {
    let _ = writeln!(out, "curve {}  p = {}", txt(at(r, "/curve")), txt(at(r, "/p")));
    for (sign, key) in [("+", "/plus"), ("-", "/minus")] {
        let s = at(r, key);
        let _ = writeln!(
            out,
            "λ{sign} = ρ{sign} + δ = {} + {} = {}",
            txt(at(s, "/rho")),
            txt(at(s, "/delta")),
            txt(at(s, "/lambda"))
        );
    }
    let _ = writeln!(out, "μ±: {}", txt(at(r, "/mu")));
    let _ = writeln!(out, "λ+ − λ− = {}", txt(at(r, "/lambda_difference")));
}

fn family(out: &mut String, r: &Value) {
    let _ = writeln!(out, "family {}  p = {}  reference {}", txt(at(r, "/name")), txt(at(r, "/p")), txt(at(r, "/reference")));
    for c in at(r, "/calibration").as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  ρ{} = λ − δ = {} − {} = {}",
            txt(at(c, "/sign")),
            txt(at(c, "/reference_lambda")),
            txt(at(c, "/reference_delta")),
            txt(at(c, "/rho"))
        );
    }
    let _ = writeln!(out, "  {:<12} {:<11} {:>6} {:>6} {:>6}  published", "member", "status", "δ", "λ+", "λ−");
    for m in at(r, "/members").as_array().into_iter().flatten() {
        let status = txt(at(m, "/status"));
        let rep = at(m, "/report");
        let _ = writeln!(
            out,
            "  {:<12} {:<11} {:>6} {:>6} {:>6}  {}",
            txt(at(m, "/id")),
            status,
            txt(at(rep, "/defect/delta")),
            txt(at(rep, "/plus/lambda")),
            txt(at(rep, "/minus/lambda")),
            txt(at(m, "/comparison")),
        );
    }
    let constant = if at(r, "/difference_constant").as_bool() == Some(true) { "holds" } else { "FAILS" };
    let _ = writeln!(out, "λ+ − λ− = {} for every computed member: {constant}", txt(at(r, "/lambda_difference")));
}

fn fetch(out: &mut String, r: &Value) {
    let _ = writeln!(out, "{}  {}  ({})", txt(at(r, "/label")), txt(at(r, "/ainvs")), txt(at(r, "/source")));
    let _ = writeln!(out, "conductor {}", txt(at(r, "/conductor")));
    let iw = at(r, "/iwasawa");
    if !iw.is_null() {
        let _ = writeln!(
            out,
            "signed invariants at p = {}: λ± = {}/{}, μ± = {}/{}",
            txt(at(iw, "/p")),
            txt(at(iw, "/lambda_plus")),
            txt(at(iw, "/lambda_minus")),
            txt(at(iw, "/mu_plus")),
            txt(at(iw, "/mu_minus"))
        );
    }
    local_table(out, at(r, "/local_data"));
}

/// Plain-text form of an envelope.
pub fn render_human(env: &ReportEnvelope) -> String {
    let mut out = String::new();
    if let Some(r) = &env.result {
        let p = txt(env.inputs.get("p").unwrap_or(&Value::Null));
        match env.command.as_str() {
            "curve report" => curve_report(&mut out, r, &p),
            "torsion" => torsion(&mut out, r),
            "split" => split(&mut out, r),
            "defect" => defect(&mut out, r),
            "lambda" => lambda(&mut out, r),
            "family run" => family(&mut out, r),
            "fetch" => fetch(&mut out, r),
            _ => {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(r).unwrap_or_default());
            }
        }
    }
    for w in &env.warnings {
        let kind = serde_json::to_value(w.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(out, "warning ({kind}): {}", w.message);
    }
    if let Some(e) = &env.error {
        let _ = writeln!(out, "error: {}", e.message);
    }
    out
}
