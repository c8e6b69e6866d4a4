use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Empirical,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub spec_digest: String,
    pub parameters: Value,
    pub passed: bool,
    pub results: Value,
    /// Tag for every key of `results`.
    pub exactness: Map<String, Value>,
    pub timestamp: String,
}

impl Report {
    /// Tags every result key `Exact` except the listed empirical ones.
    pub fn new(command: &'static str, input: &str, parameters: Value, passed: bool, results: Value, empirical: &[&str]) -> Self {
        let exactness = match &results {
            Value::Object(m) => m
                .keys()
                .map(|k| {
                    let tag = if empirical.contains(&k.as_str()) {
                        Exactness::Empirical
                    } else {
                        Exactness::Exact
                    };
                    (k.clone(), serde_json::to_value(tag).expect("tag serializes"))
                })
                .collect(),
            _ => Map::new(),
        };
        Report {
            command,
            spec_digest: digest(input),
            parameters,
            passed,
            results,
            exactness,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut rows = Vec::new();
        flatten("", &value, &mut rows);
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["field", "value"])?;
        for (k, v) in rows {
            w.write_record([k, v])?;
        }
        w.flush()
    }
}

/// SHA-256 of the input text, hex encoded.
pub fn digest(input: &str) -> String {
    hex::encode(Sha256::digest(input.as_bytes()))
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, rows)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, rows)),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Null => rows.push((prefix.to_string(), String::new())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
