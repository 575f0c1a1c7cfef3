//! Indented JSON that keeps short scalar arrays on one line.

use serde_json::Value;
use std::fmt::Write;

const INLINE_WIDTH: usize = 100;

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Object(m) if !m.is_empty() => None,
        Value::Array(a)
            if a.iter()
                .any(|x| matches!(x, Value::Object(m) if !m.is_empty())) =>
        {
            None
        }
        _ => Some(v.to_string()).filter(|s| s.len() <= INLINE_WIDTH),
    }
}

fn write(out: &mut String, v: &Value, depth: usize) {
    if let Some(s) = inline(v) {
        out.push_str(&s);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                write(out, x, depth + 1);
            }
            let _ = write!(out, "\n{}]", "  ".repeat(depth));
        }
        Value::Object(m) => {
            out.push('{');
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                write(out, x, depth + 1);
            }
            let _ = write!(out, "\n{}}}", "  ".repeat(depth));
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, v, 0);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trips_and_inlines_scalars() {
        let v = json!({"b": [1, 2, 3], "a": {"c": [[1, 2], [3]], "d": [{"e": 1}]}, "f": {}});
        let text = to_text(&v);
        assert!(text.contains("\"b\": [1,2,3]"));
        assert!(text.find("\"b\"").unwrap() < text.find("\"a\"").unwrap());
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }
}
