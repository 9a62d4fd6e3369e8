use std::io::Write;

use serde_json::Value;

use crate::fmt::f17;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => f17(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        _ => unreachable!("only scalars reach here"),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((
                prefix.to_string(),
                items.iter().map(scalar).collect::<Vec<_>>().join(";"),
            ));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

/// Two-column `key,value` rendering of a document; nested fields get dotted
/// keys and scalar lists are joined with `;`.
pub fn write_key_value<W: Write>(mut w: W, doc: &Value) -> std::io::Result<()> {
    let mut rows = Vec::new();
    flatten("", doc, &mut rows);
    writeln!(w, "key,value")?;
    for (k, v) in rows {
        if v.contains(',') || v.contains('"') {
            writeln!(w, "{k},\"{}\"", v.replace('"', "\"\""))?;
        } else {
            writeln!(w, "{k},{v}")?;
        }
    }
    Ok(())
}
