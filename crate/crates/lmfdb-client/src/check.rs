use ec_model::{conductor, local_data};
use serde::Serialize;

use crate::CurveRecord;

/// A field whose recorded value differs from the recomputed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub recorded: String,
    pub computed: String,
}

/// Recomputes conductor and local data from the a-invariants.
pub fn cross_check(record: &CurveRecord) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut push = |field: String, recorded: String, computed: String| {
        if recorded != computed {
            out.push(Mismatch { field, recorded, computed });
        }
    };
    let computed = match local_data(&record.ainvs) {
        Ok(d) => d,
        Err(e) => {
            push("local_data".into(), "present".into(), e.to_string());
            return out;
        }
    };
    let n = conductor(&record.ainvs).map(|f| f.value().to_string()).unwrap_or_default();
    push("conductor".into(), record.conductor.to_string(), n);
    let primes = |v: &[ec_model::LocalReductionData]| v.iter().map(|d| d.prime.to_string()).collect::<Vec<_>>().join(",");
    push("bad_primes".into(), primes(&record.local_data), primes(&computed));
    for r in &record.local_data {
        let Some(c) = computed.iter().find(|c| c.prime == r.prime) else { continue };
        let f = |name: &str| format!("local_data[{}].{name}", r.prime);
        push(f("kodaira"), r.kodaira.to_string(), c.kodaira.to_string());
        push(f("conductor_exponent"), r.conductor_exponent.to_string(), c.conductor_exponent.to_string());
        push(f("tamagawa"), r.tamagawa.to_string(), c.tamagawa.to_string());
    }
    out
}
