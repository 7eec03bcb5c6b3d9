use ncreal::io::mat_to_json;
use ncreal::QMat;
use serde_json::Value;

use crate::Format;

/// Text form: one row per line, entries separated by spaces.
pub fn mat_text(m: &QMat) -> String {
    if m.rows() == 0 {
        return format!("(empty {}x{} matrix)\n", m.rows(), m.cols());
    }
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// Indented JSON with arrays of scalars (matrix rows) kept on one line.
pub fn json_text(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if !items.is_empty() && !items.iter().all(is_leaf) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(item, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

pub fn mat_out(m: &QMat, format: Format) -> String {
    match format {
        Format::Json => json_text(&mat_to_json(m)),
        Format::Text => mat_text(m),
    }
}
