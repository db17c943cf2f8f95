//! Text tables rendered from the JSON documents.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Renders `{..., <rows_key>: [{...}, ...]}` (or an array of such objects) as
/// metadata lines followed by an aligned table of the rows.
pub fn table(doc: &Value, rows_key: &str) -> String {
    match doc {
        Value::Array(items) => items.iter().map(|v| table(v, rows_key)).collect::<Vec<_>>().join("\n"),
        Value::Object(map) => {
            let mut out = String::new();
            for (k, v) in map {
                if k != rows_key {
                    out.push_str(&format!("{k}: {}\n", cell(v)));
                }
            }
            if let Some(Value::Array(rows)) = map.get(rows_key) {
                out.push_str(&rows_table(rows));
            }
            out
        }
        other => format!("{}\n", cell(other)),
    }
}

fn rows_table(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    if columns.is_empty() {
        return "(no terms)\n".into();
    }
    let body: Vec<Vec<String>> =
        rows.iter().map(|r| columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()).collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(k, c)| body.iter().map(|r| r[k].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&columns);
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in &body {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligns_columns() {
        let doc = json!({"type": "A1", "terms": [{"u": "s1", "c": "1"}, {"u": "e", "c": "e[2]"}]});
        assert_eq!(table(&doc, "terms"), "type: A1\nu   c\n--  ----\ns1  1\ne   e[2]\n");
    }

    #[test]
    fn empty_rows() {
        let doc = json!({"type": "A1", "terms": []});
        assert_eq!(table(&doc, "terms"), "type: A1\n(no terms)\n");
    }
}
