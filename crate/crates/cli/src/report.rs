//! Rendering of JSON reports, either verbatim or as flat `key: value` lines.

use serde_json::Value;

pub fn render(report: &Value, text: bool) -> String {
    if !text {
        return serde_json::to_string_pretty(report).expect("reports are plain JSON values");
    }
    let mut lines = Vec::new();
    flatten("", report, &mut lines);
    lines.join("\n")
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push(format!("{prefix}: {}", parts.join(" ")));
        }
        _ => out.push(format!("{prefix}: {}", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_flattens_nested_keys() {
        let v = json!({"a": {"b": 1, "c": [1, 2]}, "d": "x", "e": [[1, 2], [3, 4]]});
        assert_eq!(render(&v, true), "a.b: 1\na.c: 1 2\nd: x\ne[0]: 1 2\ne[1]: 3 4");
    }
}
