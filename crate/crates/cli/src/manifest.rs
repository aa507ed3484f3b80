//! Run manifests embedded in every result.

use serde_json::{json, Map, Value};

pub const TOOL: &str = concat!("randsurf ", env!("CARGO_PKG_VERSION"));

/// Ordered key/value record of what produced an output. No timestamps, so
/// equal inputs give equal bytes.
#[derive(Debug, Clone, Default)]
pub struct RunManifest {
    fields: Vec<(&'static str, String)>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            fields: vec![("tool", TOOL.to_string()), ("command", command.to_string())],
        }
    }

    pub fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.fields.push((key, value.to_string()));
        self
    }

    pub fn push(&mut self, key: &'static str, value: impl ToString) {
        self.fields.push((key, value.to_string()));
    }

    pub fn comment_lines(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("# {k}: {v}\n"))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        Value::Object(map)
    }
}
