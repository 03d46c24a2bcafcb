use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Where the input came from and a digest of its bytes.
#[derive(Clone, Debug)]
pub struct InputInfo {
    pub name: String,
    pub sha256: String,
}

impl InputInfo {
    pub fn new(name: &str, bytes: &[u8]) -> Self {
        InputInfo {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Ordered key/value results plus notes. Rendering is deterministic.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input: Option<InputInfo>,
    results: Vec<(String, Value)>,
    notes: Vec<String>,
}

impl Report {
    pub fn new(command: String, input: Option<InputInfo>) -> Self {
        Report {
            command,
            input,
            results: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.results.push((key.to_string(), value.into()));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert(
            "input".into(),
            match &self.input {
                Some(i) => serde_json::json!({"name": i.name, "sha256": i.sha256}),
                None => Value::Null,
            },
        );
        let results: Map<String, Value> = self.results.iter().cloned().collect();
        root.insert("results".into(), Value::Object(results));
        root.insert(
            "notes".into(),
            self.notes.iter().cloned().map(Value::String).collect(),
        );
        Value::Object(root)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `key: value` line per result; strings are printed bare.
    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(i) = &self.input {
            out += &format!("input: {} sha256={}\n", i.name, i.sha256);
        }
        let width = self.results.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.results {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out += &format!("{k:<width$}  {shown}\n");
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}
