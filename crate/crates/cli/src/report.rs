//! Report envelope and the JSON shapes shared by several commands.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use pregal_core::permgroup::catalog;
use pregal_core::permgroup::{PermGroup, Perm};
use pregal_core::Bounds;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Subgroups up to this order also list their elements.
const ELEMENT_LIST_LIMIT: usize = 64;

pub fn perm(p: &Perm) -> Value {
    Value::String(p.to_cycle_string(1))
}

pub fn perms<'a>(ps: impl IntoIterator<Item = &'a Perm>) -> Value {
    Value::Array(ps.into_iter().map(perm).collect())
}

pub fn group(g: &PermGroup) -> Value {
    let mut v = json!({
        "order": g.order(),
        "degree": g.degree(),
        "type": catalog::describe(g),
        "generators": perms(&g.canonical_generators()),
    });
    if g.order() <= ELEMENT_LIST_LIMIT {
        v["elements"] = perms(g.elements());
    }
    v
}

pub fn points(ps: &[usize]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p + 1)).collect())
}

pub fn bounds(b: &Bounds) -> Value {
    json!({
        "max_elements": b.max_elements,
        "max_subgroup_order": b.max_subgroup_order,
        "max_automorphism_order": b.max_automorphism_order,
        "max_symmetric_degree": b.max_symmetric_degree,
        "max_tuple_space": b.max_tuple_space,
    })
}

/// SHA-256 over the command, its arguments and the bytes of every input it read.
pub fn digest(command: &str, arguments: &Value, inputs: &[(String, Vec<u8>)]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(arguments.to_string().as_bytes());
    for (label, bytes) in inputs {
        h.update([0]);
        h.update(label.as_bytes());
        h.update([0]);
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

pub fn envelope(
    command: &str,
    arguments: Value,
    inputs: &[(String, Vec<u8>)],
    b: &Bounds,
    result: Value,
) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": digest(command, &arguments, inputs),
        "arguments": arguments,
        "toolkit_version": TOOLKIT_VERSION,
        "bounds": bounds(b),
        "result": result,
    })
}

/// One `path = value` line per scalar, in key order.
pub fn to_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
            other => out.push_str(&format!("{prefix} = {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = envelope("catalog", json!({"b": 1, "a": 2}), &[], &Bounds::DEFAULT, json!({"z": 1, "y": [1, 2]}));
        let s = serde_json::to_string(&v).unwrap();
        let a = s.find("\"arguments\"").unwrap();
        let r = s.find("\"result\"").unwrap();
        assert!(a < r);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }

    #[test]
    fn digest_depends_on_inputs() {
        let a = digest("x", &json!({}), &[("f".into(), b"degree 3".to_vec())]);
        let b = digest("x", &json!({}), &[("f".into(), b"degree 4".to_vec())]);
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn text_rendering() {
        let t = to_text(&json!({"b": [1, {"c": "x"}], "a": true, "e": []}));
        assert_eq!(t, "a = true\nb[0] = 1\nb[1].c = x\ne = []\n");
    }
}
