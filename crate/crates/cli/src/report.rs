use std::time::Instant;

use octic_core::galois::GaloisLabel;
use octic_core::monogenic::{Certificate, Status, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

/// Top-level JSON document. `elapsed_ms` is the only field that varies
/// between runs.
#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub args: Value,
    pub result: Value,
    pub exit_code: i32,
    pub elapsed_ms: u64,
}

pub struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Timer(Instant::now())
    }

    pub fn ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

pub fn label_json(label: Option<GaloisLabel>) -> Value {
    match label {
        Some(l) => json!({ "label": l.to_string(), "group": l.name(), "order": l.order() }),
        None => Value::Null,
    }
}

/// Verdict fields, with certificates only when `verbose`.
pub fn verdict_json(v: &Verdict, label: Option<GaloisLabel>, verbose: bool) -> Value {
    let mut out = json!({
        "input": v.input,
        "status": v.status,
        "discriminant": v.discriminant.to_string(),
        "galois": label_json(label),
        "primes_checked": v.certificates.iter().map(|c| c.prime().to_string()).collect::<Vec<_>>(),
    });
    let obj = out.as_object_mut().expect("object");
    if let Some(fp) = v.fast_path {
        obj.insert("fast_path".into(), json!(fp.tag()));
    }
    if let Some(r) = &v.unknown_reason {
        obj.insert("unknown_reason".into(), json!(r));
    }
    if let Some(c) = v.failing() {
        obj.insert("failing".into(), failing_json(c));
    }
    if verbose {
        obj.insert("certificates".into(), json!(v.certificates));
    }
    out
}

fn failing_json(c: &Certificate) -> Value {
    match c {
        Certificate::Jks(j) => json!({ "criterion": "jks", "prime": j.prime.to_string(), "clause": j.clause }),
        Certificate::Dedekind(d) => json!({ "criterion": "dedekind", "prime": d.prime.to_string() }),
    }
}

pub fn status_text(s: Status) -> &'static str {
    match s {
        Status::NotIrreducible => "not irreducible",
        Status::Monogenic => "monogenic",
        Status::NotMonogenic => "not monogenic",
        Status::Unknown => "unknown",
    }
}
