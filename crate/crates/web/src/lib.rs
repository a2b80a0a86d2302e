//! Browser bindings. Each export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch.

use cms_core::generators::{b_graph, complete, cycle, random_regular, two_regular};
use cms_core::oracle::{exact_cms, CmsSearch};
use cms_core::sequencer::{general_lower_bound_ordering, two_regular_certificate, CmsCertificate};
use cms_core::{EdgeOrdering, Error, Graph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Keeps a click in the page under a second or so.
const EXACT_BUDGET: u64 = 5_000_000;
const MAX_VERTICES: usize = 400;

fn graph_json(g: &Graph, ordering: &EdgeOrdering) -> Value {
    let edges: Vec<Value> = ordering
        .edges()
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            json!([u, v])
        })
        .collect();
    // edges listed in label order
    json!({ "n": g.n(), "m": g.m(), "edges": edges })
}

fn certificate_json(g: &Graph, cert: &CmsCertificate) -> Value {
    json!({
        "graph": graph_json(g, &cert.ordering),
        "method": cert.method.tag(),
        "claimed_bound": cert.claimed_bound,
        "measured_cms": cert.measured_cms,
        "verified": cert.verified,
        "c": cert.graph.c,
    })
}

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

pub fn two_regular_value(lengths: &str) -> Result<Value, String> {
    let lengths: Vec<usize> = lengths
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad cycle length {t:?}")))
        .collect::<Result<_, _>>()?;
    if lengths.iter().sum::<usize>() > MAX_VERTICES {
        return Err(format!("at most {MAX_VERTICES} vertices"));
    }
    let g = two_regular(&lengths).map_err(|e| e.to_string())?;
    let cert = two_regular_certificate(&g).map_err(|e| e.to_string())?;
    let mut out = certificate_json(&g, &cert);
    out["target"] = json!(g.n() / 3);
    Ok(out)
}

pub fn exact_value(family: &str, size: usize) -> Result<Value, String> {
    let g = match family {
        "cycle" => cycle(size),
        "complete" => Ok(complete(size)),
        "bk" => b_graph(size),
        other => return Err(format!("unknown family {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    if g.m() > 30 {
        return Err("graph too large for the in-browser search".into());
    }
    match exact_cms(&g, CmsSearch { node_budget: EXACT_BUDGET }) {
        Ok(found) => Ok(json!({
            "graph": graph_json(&g, &found.witness),
            "cms": found.value,
            "nodes": found.nodes,
        })),
        Err(Error::BudgetExceeded { lo, hi }) => {
            let identity = EdgeOrdering::of_graph(&g, (0..g.m()).collect()).map_err(|e| e.to_string())?;
            Ok(json!({ "graph": graph_json(&g, &identity), "cms_interval": [lo, hi] }))
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn lower_bound_value(n: usize, k: usize, seed: u64) -> Result<Value, String> {
    if n > MAX_VERTICES {
        return Err(format!("at most {MAX_VERTICES} vertices"));
    }
    let g = random_regular(n, k, seed).map_err(|e| e.to_string())?;
    let cert = general_lower_bound_ordering(&g);
    let mut out = certificate_json(&g, &cert);
    out["t"] = json!(cert.params.t);
    Ok(out)
}

/// Ordering of a union of cycles, e.g. `"4, 5"`.
#[wasm_bindgen]
pub fn order_cycles(lengths: &str) -> String {
    respond(two_regular_value(lengths))
}

/// Exact cms of `cycle`, `complete` or `bk` at the given size.
#[wasm_bindgen]
pub fn exact_small(family: &str, size: u32) -> String {
    respond(exact_value(family, size as usize))
}

/// Lower-bound ordering for a seeded random `k`-regular graph.
#[wasm_bindgen]
pub fn random_lower_bound(n: u32, k: u32, seed: u32) -> String {
    respond(lower_bound_value(n as usize, k as usize, seed as u64))
}
