//! JSON reports. Rationals are written as fraction strings such as `"5/2"`;
//! no field is ever a float.

use std::collections::BTreeMap;

use cms_core::partition::Verdict;
use cms_core::sequencer::{CmsCertificate, Parameters};
use cms_core::Graph;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::format::write_edge_list;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub n: usize,
    pub m: usize,
    /// SHA-256 of the canonical edge-list text.
    pub sha256: String,
}

impl InputDigest {
    pub fn of(g: &Graph) -> Self {
        let digest = Sha256::digest(write_edge_list(g).as_bytes());
        InputDigest {
            n: g.n(),
            m: g.m(),
            sha256: format!("{digest:x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: Option<InputDigest>,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, g: Option<&Graph>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input: g.map(InputDigest::of),
            params: BTreeMap::new(),
            result: Value::Null,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "property": format!("P{}", v.property),
        "passed": v.passed,
        "witness": v.witness.as_ref().map(|w| w.to_string()),
    })
}

fn params_json(p: &Parameters) -> Value {
    let mut out = serde_json::Map::new();
    let fields = [("x", p.x), ("y", p.y), ("w", p.w), ("t", p.t), ("attempt", p.attempt)];
    for (key, value) in fields {
        if let Some(v) = value {
            out.insert(key.into(), v.into());
        }
    }
    if let Some(a) = p.alpha {
        out.insert("alpha".into(), a.to_string().into());
    }
    if let Some(s) = p.seed {
        out.insert("seed".into(), s.into());
    }
    Value::Object(out)
}

pub fn ordering_pairs(g: &Graph, seq: &[usize]) -> Value {
    seq.iter().map(|&e| {
        let (u, v) = g.endpoints(e);
        json!([u, v])
    }).collect()
}

pub fn certificate_json(g: &Graph, cert: &CmsCertificate) -> Value {
    json!({
        "method": cert.method.tag(),
        "graph": {
            "n": cert.graph.n,
            "k": cert.graph.k,
            "m": cert.graph.m,
            "c": cert.graph.c,
            "c_exact": cert.graph.c_exact,
        },
        "params": params_json(&cert.params),
        "claimed_bound": cert.claimed_bound,
        "measured_cms": cert.measured_cms,
        "verified": cert.verified,
        "verdicts": cert.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
        "ordering": ordering_pairs(g, cert.ordering.edges()),
    })
}
