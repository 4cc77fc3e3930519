//! Plain-text rendering of result documents.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn walk(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key:<18} {s}\n"));
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let joined: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{pad}{key:<18} [{}]\n", joined.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}\n"));
            for (k, item) in items.iter().enumerate() {
                walk(out, &format!("[{k}]"), item, indent + 1);
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}\n"));
            for (k, item) in map {
                walk(out, k, item, indent + 1);
            }
        }
        _ => unreachable!(),
    }
}

pub fn table(doc: &Value) -> String {
    let mut out = String::new();
    match doc {
        Value::Object(map) => {
            for (k, v) in map {
                walk(&mut out, k, v, 0);
            }
        }
        other => walk(&mut out, "result", other, 0),
    }
    out
}
