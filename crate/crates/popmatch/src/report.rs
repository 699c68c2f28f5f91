//! JSON renderings of verdicts and certificates, and the per-run report.

use popmatch_core::characterize::{DualCertificate, Improvement, RivalKind};
use popmatch_core::{Certificate, DualVector, Instance, StructuralWitness, Verdict};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::format::{format_matching, serialize_instance};

/// SHA-256 of the canonical serialization, in lowercase hex.
pub fn instance_digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_instance(inst).as_bytes()))
}

/// `{vertex name: value}` in vertex order.
pub fn dual_values(inst: &Instance, y: &DualVector) -> Value {
    let map: Map<String, Value> = inst
        .vertices()
        .map(|v| (inst.name(v).to_string(), json!(y.get(v))))
        .collect();
    Value::Object(map)
}

pub fn dual_json(inst: &Instance, c: &DualCertificate) -> Value {
    json!({
        "regime": c.dual.regime.as_str(),
        "y": dual_values(inst, &c.dual),
        "objective": c.objective,
        "primal_value": c.primal_value,
        "cs_ok": c.cs_ok,
    })
}

pub fn witness_json(inst: &Instance, w: &StructuralWitness) -> Value {
    let names: Vec<&str> = w.vertices.iter().map(|&v| inst.name(v)).collect();
    json!({ "witness": w.kind.as_str(), "vertices": names })
}

pub fn improvement_json(inst: &Instance, imp: &Improvement) -> Value {
    json!({ "matching": format_matching(inst, &imp.matching), "gain": imp.gain })
}

/// Certificate object tagged with `"kind"`.
pub fn certificate_json(inst: &Instance, c: &Certificate) -> Value {
    let (kind, mut body) = match c {
        Certificate::Dual(d) => ("dual", dual_json(inst, d)),
        Certificate::Witness(w) => ("witness", witness_json(inst, w)),
        Certificate::Rival { matching, kind } => {
            let detail = match kind {
                RivalKind::Beats { delta } => json!({ "beats_by": delta }),
                RivalKind::Heavier { weight, current } => {
                    json!({ "weight": weight, "current_weight": current })
                }
            };
            let mut body = json!({ "matching": format_matching(inst, matching) });
            merge(&mut body, detail);
            ("rival", body)
        }
        Certificate::Exhaustive { rivals } => ("exhaustive", json!({ "rivals": rivals })),
    };
    let mut tagged = json!({ "kind": kind });
    merge(&mut tagged, body.take());
    tagged
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

pub fn verdict_json(inst: &Instance, v: &Verdict) -> Value {
    json!({
        "popular": v.popular,
        "method": v.method.as_str(),
        "certificate": certificate_json(inst, &v.certificate),
    })
}

/// One CLI invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub instance_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<String>,
    pub verdicts: Vec<Value>,
    pub certificates: Vec<Value>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, inst: &Instance) -> Self {
        RunReport {
            command: command.to_string(),
            instance_digest: instance_digest(inst),
            matching: None,
            verdicts: Vec::new(),
            certificates: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
