//! Reports: one payload, rendered either as JSON or as indented text.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<(String, bool)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), v.into());
        self
    }

    pub fn check(&mut self, name: &str, pass: bool) -> &mut Self {
        self.checks.push((name.to_string(), pass));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, pass)| json!({"name": name, "pass": pass}))
            .collect();
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": checks,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out.push_str("inputs:\n");
        write_map(&mut out, &self.inputs, 1);
        out.push_str("results:\n");
        write_map(&mut out, &self.results, 1);
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for (name, pass) in &self.checks {
                let verdict = if *pass { "pass" } else { "FAIL" };
                out.push_str(&format!("  {name}: {verdict}\n"));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Short scalars print inline; table rows and messages get their own lines.
fn inline_scalar(v: &Value) -> bool {
    match v {
        Value::Number(_) | Value::Bool(_) => true,
        Value::String(s) => !s.contains(' '),
        _ => false,
    }
}

fn write_map(out: &mut String, m: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
            continue;
        }
        match v {
            Value::Array(items) if items.iter().all(inline_scalar) => {
                let parts: Vec<String> = items.iter().filter_map(scalar).collect();
                out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
            }
            Value::Array(items) => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_items(out, items, depth + 1);
            }
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_map(out, inner, depth + 1);
            }
            _ => unreachable!(),
        }
    }
}

fn write_items(out: &mut String, items: &[Value], depth: usize) {
    let pad = "  ".repeat(depth);
    if items.is_empty() {
        out.push_str(&format!("{pad}(none)\n"));
    }
    for item in items {
        match item {
            Value::Object(m) => {
                // one line per record: "k1=v1, k2=v2"
                let parts: Vec<String> = m
                    .iter()
                    .map(|(k, v)| match scalar(v) {
                        Some(s) => format!("{k}={s}"),
                        None => format!("{k}={v}"),
                    })
                    .collect();
                out.push_str(&format!("{pad}- {}\n", parts.join(", ")));
            }
            Value::Array(row) => {
                let parts: Vec<String> = row
                    .iter()
                    .map(|v| scalar(v).unwrap_or_else(|| v.to_string()))
                    .collect();
                out.push_str(&format!("{pad}[{}]\n", parts.join(", ")));
            }
            v => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
        }
    }
}
