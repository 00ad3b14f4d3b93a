//! The machine-readable result of one CLI invocation, and its JSON, CSV and text encodings.
//!
//! Every field except `timings` is a function of the command line (including the seed), so
//! two runs agree byte for byte once [`Report::normalized`] has cleared the timings.

use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Versions {
    pub kkg: &'static str,
    pub kkg_core: &'static str,
    pub schema: u32,
}

impl Default for Versions {
    fn default() -> Self {
        Versions {
            kkg: env!("CARGO_PKG_VERSION"),
            kkg_core: kkg_core::VERSION,
            schema: SCHEMA_VERSION,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    /// The subcommand path, e.g. `["verify", "oracle"]`.
    pub command: Vec<String>,
    pub parameters: Map<String, Value>,
    /// `true` unless a check inside the command failed.
    pub passed: bool,
    pub results: Value,
    /// Data supporting the result, e.g. a matrix attaining an exponent or a failing instance.
    pub witness: Value,
    pub versions: Versions,
    pub timings: Timings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Report {
    pub fn new(command: &[&str], parameters: Map<String, Value>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.iter().map(|s| s.to_string()).collect(),
            parameters,
            passed: true,
            results: Value::Null,
            witness: Value::Null,
            versions: Versions::default(),
            timings: Timings::default(),
        }
    }

    /// A copy with timings zeroed, for byte-level comparison of runs.
    pub fn normalized(&self) -> Self {
        Report {
            timings: Timings::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Leaf values keyed by dotted path (`results.a.order`, `results.checks.3.status`).
    pub fn flatten(&self) -> Vec<(String, Value)> {
        let mut out = Vec::new();
        let value = serde_json::to_value(self).expect("reports serialize");
        flatten_into(&mut out, String::new(), &value);
        out
    }

    /// Two columns, `key,value`; strings unquoted unless CSV quoting requires it.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value"]).expect("in-memory write");
        for (k, v) in self.flatten() {
            w.write_record([k, scalar_text(&v)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.flatten() {
            if k.starts_with("versions.") || k.starts_with("schema_version") {
                continue;
            }
            out.push_str(&format!("{k}: {}\n", scalar_text(&v)));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flatten_into(out: &mut Vec<(String, Value)>, prefix: String, v: &Value) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten_into(out, join(k), v);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(out, join(&i.to_string()), v);
            }
        }
        leaf => out.push((prefix, leaf.clone())),
    }
}

/// Large integers (`u128`) are emitted as JSON numbers when they fit in `u64` and as
/// decimal strings otherwise, so that JSON readers with 64-bit integers never lose precision.
pub fn big(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}
