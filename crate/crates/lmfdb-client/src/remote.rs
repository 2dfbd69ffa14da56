//! Requests against the LMFDB REST API (`/api/<table>/?<field>=<value>&_format=json`).

use ec_model::{Kodaira, LocalReductionData, ReductionType, WeierstrassCurve};
use num_bigint::BigInt;
use serde_json::Value;

use crate::{CurveRecord, IwasawaData, LmfdbError, Source};

fn bad(msg: impl Into<String>) -> LmfdbError {
    LmfdbError::MalformedResponse(msg.into())
}

fn int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => arith_core::parse_int(s),
        _ => None,
    }
}

fn small(v: &Value) -> Option<i64> {
    v.as_i64().or_else(|| v.as_str()?.trim().parse().ok())
}

fn rows(agent: &ureq::Agent, base: &str, table: &str, field: &str, value: &str) -> Result<Vec<Value>, LmfdbError> {
    let url = format!("{}/api/{table}/", base.trim_end_matches('/'));
    let resp = agent
        .get(&url)
        .query(field, value)
        .query("_format", "json")
        .call();
    let body: Value = match resp {
        Ok(r) => r.into_json().map_err(|e| bad(e.to_string()))?,
        Err(ureq::Error::Status(404, _)) => return Ok(Vec::new()),
        Err(e) => return Err(LmfdbError::Network(e.to_string())),
    };
    match body.get("data") {
        Some(Value::Array(a)) => Ok(a.clone()),
        _ => Err(bad(format!("{table}: no data array"))),
    }
}

fn local_row(row: &Value) -> Result<LocalReductionData, LmfdbError> {
    let get = |k: &str| row.get(k).ok_or_else(|| bad(format!("local data lacks {k}")));
    let prime = int(get("prime")?).ok_or_else(|| bad("prime"))?;
    let f = small(get("conductor_valuation")?).ok_or_else(|| bad("conductor_valuation"))? as u32;
    let code = small(get("kodaira_symbol")?).ok_or_else(|| bad("kodaira_symbol"))?;
    let kodaira = Kodaira::from_pari_code(code).ok_or_else(|| bad(format!("kodaira code {code}")))?;
    let red = row.get("reduction_type").and_then(small).unwrap_or(0);
    let reduction_type = match f {
        0 => ReductionType::Good,
        1 if red == 1 => ReductionType::MultiplicativeSplit,
        1 => ReductionType::MultiplicativeNonsplit,
        _ => ReductionType::Additive,
    };
    Ok(LocalReductionData {
        prime,
        reduction_type,
        kodaira,
        conductor_exponent: f,
        tamagawa: small(get("tamagawa_number")?).ok_or_else(|| bad("tamagawa_number"))? as u32,
        discriminant_valuation: small(get("discriminant_valuation")?).ok_or_else(|| bad("discriminant_valuation"))?
            as u32,
    })
}

/// Signed invariants from an `iwdata` entry of the form
/// `{"p": [[λ+, λ−], [μ+, μ−]]}`; entries in the ordinary form `[λ, μ]` are skipped.
fn iwasawa_row(row: &Value) -> Option<IwasawaData> {
    let data = row.get("iwdata")?.as_object()?;
    let mut best: Option<IwasawaData> = None;
    for (p, v) in data {
        let Some([l, m]) = v.as_array().map(|a| a.as_slice()) else { continue };
        let (Some(l), Some(m)) = (l.as_array(), m.as_array()) else { continue };
        let (Some(lp), Some(lm), Some(mp), Some(mm)) = (
            l.first().and_then(Value::as_u64),
            l.get(1).and_then(Value::as_u64),
            m.first().and_then(Value::as_u64),
            m.get(1).and_then(Value::as_u64),
        ) else {
            continue;
        };
        let Ok(p) = p.parse::<u32>() else { continue };
        if best.as_ref().is_none_or(|b| p < b.p) {
            best = Some(IwasawaData { p, lambda_plus: lp, lambda_minus: lm, mu_plus: mp, mu_minus: mm });
        }
    }
    best
}

pub(crate) fn fetch(agent: &ureq::Agent, base: &str, label: &str) -> Result<CurveRecord, LmfdbError> {
    let field = if label.contains('.') { "lmfdb_label" } else { "Clabel" };
    let curve = rows(agent, base, "ec_curvedata", field, label)?
        .into_iter()
        .next()
        .ok_or_else(|| LmfdbError::NotFound(label.to_string()))?;
    let ainvs: Vec<BigInt> = curve
        .get("ainvs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("ainvs"))?
        .iter()
        .map(|v| int(v).ok_or_else(|| bad("ainvs entry")))
        .collect::<Result<_, _>>()?;
    let ainvs: [BigInt; 5] = ainvs.try_into().map_err(|_| bad("ainvs length"))?;
    let ainvs = WeierstrassCurve::new(ainvs).map_err(|e| bad(e.to_string()))?;
    let conductor = curve.get("conductor").and_then(int).ok_or_else(|| bad("conductor"))?;
    let lmfdb_label = curve
        .get("lmfdb_label")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("lmfdb_label"))?
        .to_string();
    let torsion_structure = curve
        .get("torsion_structure")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default();
    let mut local_data = rows(agent, base, "ec_localdata", "lmfdb_label", &lmfdb_label)?
        .iter()
        .map(local_row)
        .collect::<Result<Vec<_>, _>>()?;
    local_data.sort_by(|a, b| a.prime.cmp(&b.prime));
    let iwasawa = rows(agent, base, "ec_iwasawa", "lmfdb_label", &lmfdb_label)?
        .iter()
        .find_map(iwasawa_row);
    Ok(CurveRecord {
        label: label.to_string(),
        ainvs,
        conductor,
        local_data,
        torsion_structure,
        iwasawa,
        retrieved_at: None,
        source: Source::Remote,
    })
}
