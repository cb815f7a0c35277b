//! JSON and LaTeX renderings of characters and Verma-basis vectors.

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::Weight;
use crate::character::{FormalCharacter, VermaVector};

pub fn verma_json(v: &VermaVector) -> Value {
    let terms: Vec<Value> = v.ordered_terms().into_iter().map(|(w, c)| json!({"weight": w, "coeff": c})).collect();
    json!({"basis": "verma", "terms": terms})
}

/// Monomials are unshifted exponents, listed by increasing depth below the top.
pub fn character_json(c: &FormalCharacter) -> Value {
    let terms: Vec<Value> = c.monomials().into_iter().map(|(w, k)| json!({"weight": w, "coeff": k})).collect();
    json!({"basis": "monomial", "depth": c.depth(), "base": c.base(), "terms": terms})
}

impl Serialize for VermaVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        verma_json(self).serialize(s)
    }
}

impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        character_json(self).serialize(s)
    }
}

fn latex_weight(w: &Weight) -> String {
    let f = |r: &crate::Rational| {
        if r.is_integer() {
            r.to_string()
        } else {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{sign}\\tfrac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
        }
    };
    format!("({},{},{})", f(&w.x), f(&w.y), f(&w.z))
}

fn latex_sum(terms: impl Iterator<Item = (String, i64)>) -> String {
    let mut out = String::new();
    for (sym, c) in terms {
        let mag = c.unsigned_abs();
        let coef = if mag == 1 { String::new() } else { mag.to_string() };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&coef);
        out.push_str(&sym);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn verma_latex(v: &VermaVector) -> String {
    latex_sum(v.ordered_terms().into_iter().map(|(w, c)| (format!("M_{{{}}}", latex_weight(&w)), c)))
}

pub fn character_latex(c: &FormalCharacter) -> String {
    latex_sum(c.monomials().into_iter().map(|(w, k)| (format!("e^{{{}}}", latex_weight(&w)), k)))
}
