//! Versioned report envelope and rendering.

use serde_json::{Map, Value};

use crate::LabResult;

pub const SCHEMA: &str = "spinor-lab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `{"schema": …, "command": …}` followed by the fields of `body`.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::from(SCHEMA));
    out.insert("command".into(), Value::from(command));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

pub fn render(format: Format, report: &Value) -> LabResult<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => to_csv(report),
    }
}

/// A report with a `rows` array of flat objects becomes a table; anything
/// else is flattened to `key,value` lines.
fn to_csv(report: &Value) -> LabResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match report.get("rows").and_then(Value::as_array) {
        Some(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let header: Vec<String> = rows[0].as_object().map(|m| m.keys().cloned().collect()).unwrap_or_default();
            w.write_record(&header)?;
            for row in rows {
                let rec: Vec<String> = header.iter().map(|k| cell(row.get(k).unwrap_or(&Value::Null))).collect();
                w.write_record(&rec)?;
            }
        }
        _ => {
            w.write_record(["key", "value"])?;
            let mut flat = Vec::new();
            flatten("", report, &mut flat);
            for (k, v) in flat {
                w.write_record([k, v])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        other => out.push((prefix.to_string(), cell(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn envelope_leads_with_schema() {
        let v = envelope("x", json!({"a": 1}));
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["schema", "command", "a"]);
        assert_eq!(v["schema"], SCHEMA);
    }

    #[test]
    fn csv_table_and_flat() {
        let v = envelope("t", json!({"rows": [{"p": 2, "q": 3, "N": 4}]}));
        assert_eq!(render(Format::Csv, &v).unwrap(), "p,q,N\n2,3,4\n");
        let v = json!({"a": {"b": [true, "x"]}});
        assert_eq!(render(Format::Csv, &v).unwrap(), "key,value\na.b.0,true\na.b.1,x\n");
    }
}
