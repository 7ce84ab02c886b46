use std::fmt::Write as _;

use serde_json::{json, Value};

pub const SCHEMA: &str = "semidomain-atoms/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One invocation's output.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Everything needed to re-run the invocation.
    pub input: Value,
    pub result: Value,
    pub certificates: Vec<Value>,
    pub decided: bool,
    /// Set when `--verify` re-checked the certificates.
    pub verified: Option<bool>,
    pub timing_ms: u64,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "tool_version": TOOL_VERSION,
            "input": self.input,
            "result": self.result,
            "certificates": self.certificates,
            "decided": self.decided,
            "verified": self.verified,
            "timing_ms": self.timing_ms,
        })
    }

    /// Sorted keys, no insignificant whitespace, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        canonical(&self.to_value())
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        flatten(&mut out, "input", &self.input);
        flatten(&mut out, "result", &self.result);
        let _ = writeln!(out, "{:<28} {}", "decided", self.decided);
        if let Some(v) = self.verified {
            let _ = writeln!(out, "{:<28} {}", "verified", v);
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(out, "certificates");
            for c in &self.certificates {
                let _ = writeln!(out, "  {}", canonical(c).trim_end());
            }
        }
        let _ = writeln!(out, "{:<28} {}", "timing_ms", self.timing_ms);
        out
    }
}

/// `serde_json` keeps object keys in a `BTreeMap`, so plain serialization is
/// already sorted.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Drops the timing field, the only part allowed to vary between runs.
pub fn without_timing(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing_ms");
    }
    v
}

fn is_scalar_array(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn flatten(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(out, &format!("{path}.{k}"), x);
            }
        }
        Value::Array(items) if !is_scalar_array(v) => {
            for (i, x) in items.iter().enumerate() {
                flatten(out, &format!("{path}[{i}]"), x);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{path:<28} {s}");
        }
        _ => {
            let _ = writeln!(out, "{path:<28} {v}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let r = Report {
            input: json!({"z": 1, "a": [1, 2]}),
            result: json!({"strong": {"finite": 4}}),
            certificates: vec![],
            decided: true,
            verified: None,
            timing_ms: 3,
        };
        let s = r.to_canonical_json();
        assert!(s.starts_with("{\"certificates\":[],\"decided\":true,\"input\":{\"a\":[1,2],\"z\":1}"));
        assert!(!canonical(&without_timing(r.to_value())).contains("timing_ms"));
        assert!(r.to_table().contains("result.strong.finite"));
    }
}
