//! Browser bindings: block classification, block orbits and tilting flags.
//!
//! Every export returns a JSON string, `{"ok": ...}` or `{"error": "..."}`.

use d21::block::{block_irreducibles, classify_block};
use d21::duality::tilting_flag;
use d21::export::verma_json;
use d21::{Result, Weight, ZetaParam};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse(zeta: &str, weight: &str) -> Result<(ZetaParam, Weight)> {
    Ok((zeta.trim().parse()?, weight.parse()?))
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => json!({ "error": e.to_string() }),
    }
    .to_string()
}

/// Block descriptor of `weight` at `zeta`.
#[wasm_bindgen]
pub fn classify(zeta: &str, weight: &str) -> String {
    respond(parse(zeta, weight).and_then(|(z, w)| Ok(classify_block(&w, &z)?.to_json())))
}

/// Block members reachable from `weight` within `bound` steps, sorted.
#[wasm_bindgen]
pub fn block_orbit(zeta: &str, weight: &str, bound: u32) -> String {
    respond(parse(zeta, weight).and_then(|(z, w)| {
        let members = block_irreducibles(&w, &z, bound.min(40))?;
        Ok(json!({ "count": members.len(), "weights": members }))
    }))
}

/// Verma flag of the tilting module with highest weight `weight`.
#[wasm_bindgen]
pub fn tilting(zeta: &str, weight: &str) -> String {
    respond(parse(zeta, weight).and_then(|(z, w)| Ok(verma_json(&tilting_flag(&w, &z)?))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(s: &str) -> Value {
        let v: Value = serde_json::from_str(s).unwrap();
        v.get("ok").cloned().unwrap_or_else(|| panic!("expected ok, got {s}"))
    }

    #[test]
    fn classify_two_integer() {
        let v = ok(&classify("2", "4/3,0,-2"));
        assert_eq!(v["kind"], "two-integer");
        assert_eq!(v["ell"], 2);
    }

    #[test]
    fn orbit_contains_the_weight() {
        let v = ok(&block_orbit("2", "4/3,0,-2", 4));
        let ws = v["weights"].as_array().unwrap();
        assert!(ws.contains(&json!(["4/3", "0", "-2"])));
        assert_eq!(v["count"], ws.len());
    }

    #[test]
    fn tilting_flag_terms() {
        let v = ok(&tilting("2", "4/3,0,-2"));
        assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn errors_are_reported() {
        let v: Value = serde_json::from_str(&classify("-1", "1,1,1")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("zeta"));
        let v: Value = serde_json::from_str(&tilting("2", "1,2")).unwrap();
        assert!(v.get("error").is_some());
    }
}
