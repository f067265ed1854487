//! Conversion of core values to report trees, and the plain-text layout.

use lieco_core::cohomology::AlgebraTwoCocycle;
use lieco_core::group::Check;
use lieco_core::orbit::{InvariantProfile, OrbitVerdict};
use lieco_core::rational::format_q;
use lieco_core::{AlgebraVector, LieAlgebra, QMatrix, Q};
use serde_json::{json, Map, Value};

pub fn q(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn qvec(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn vectors(vs: &[AlgebraVector]) -> Value {
    Value::Array(vs.iter().map(|v| qvec(&v.0)).collect())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| qvec(r)).collect())
}

pub fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| float(x)).collect())
}

/// Non-finite values become strings so the document stays valid JSON.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(format!("{x}"))
    }
}

pub fn algebra(a: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = a
        .to_table()
        .brackets
        .iter()
        .map(|b| {
            let terms: Vec<Value> = b
                .terms
                .iter()
                .map(|(c, n)| json!([format_q(c), n]))
                .collect();
            json!({ "left": b.left, "right": b.right, "terms": terms })
        })
        .collect();
    json!({
        "name": a.name(),
        "dim": a.dim(),
        "basis": a.basis_names(),
        "brackets": brackets,
    })
}

/// Nonzero entries `Γ(A, B)` with `A` before `B` in the basis.
pub fn cocycle(a: &LieAlgebra, g: &AlgebraTwoCocycle) -> Value {
    let names = a.basis_names();
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = g.get(i, j);
            if *v != Q::from_integer(0.into()) {
                out.push(json!([names[i], names[j], format_q(v)]));
            }
        }
    }
    Value::Array(out)
}

pub fn cocycles(a: &LieAlgebra, gs: &[AlgebraTwoCocycle]) -> Value {
    Value::Array(gs.iter().map(|g| cocycle(a, g)).collect())
}

pub fn checks(cs: &[Check]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "samples": c.samples,
                    "max_residual": float(c.max_residual),
                    "tol": float(c.tol),
                    "passed": c.passed,
                })
            })
            .collect(),
    )
}

pub fn profile(p: &InvariantProfile) -> Value {
    let mut casimirs = Map::new();
    for (name, v) in &p.casimir_values {
        casimirs.insert(name.clone(), float(*v));
    }
    json!({ "omega_rank": p.omega_rank, "casimirs": casimirs })
}

pub fn verdict(v: &OrbitVerdict) -> Value {
    let sep = v.separating_invariant.as_ref().map(|s| {
        json!({
            "name": s.name,
            "first": float(s.first),
            "second": float(s.second),
            "resolution": float(s.resolution),
        })
    });
    json!({
        "status": v.status.as_str(),
        "witness": v.witness.as_deref().map(floats),
        "residual": float(v.residual),
        "separating_invariant": sep,
        "restart": v.restart,
        "evaluations": v.evaluations,
        "notes": v.notes,
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && scalar(i).is_some()) => {
            let parts: Vec<String> = items
                .iter()
                .map(|i| scalar(i).unwrap_or_default())
                .collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn text_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) if !s.contains('\n') => out.push_str(&format!("{pad}{k}: {s}\n")),
                    Some(s) => {
                        out.push_str(&format!("{pad}{k}: |\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    None if item.as_array().is_some_and(Vec::is_empty)
                        || item.as_object().is_some_and(Map::is_empty) =>
                    {
                        out.push_str(&format!("{pad}{k}: -\n"))
                    }
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_into(out, item, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_into(out, item, indent + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Indented `key: value` layout of a report tree.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}
