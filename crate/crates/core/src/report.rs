//! Structured command results with deterministic text and JSON renderings.
//!
//! Every command produces a `Report`: the command name, the echoed input
//! parameters, a map of typed output values, and a one-line note stating the
//! identity or convention behind the numbers. Keys are kept in ordered maps
//! so that repeated runs print byte-identical output.

use crate::Rational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// A single typed output value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Rat(Rational),
    Text(String),
}

impl Value {
    pub fn from_u64(v: u64) -> Value {
        Value::Int(v as i64)
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
            // lowest terms, `p/q`, integers without the denominator
            Value::Rat(v) => write!(f, "{v}"),
            Value::Text(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Int(v) => serializer.serialize_i64(*v),
            Value::Bool(v) => serializer.serialize_bool(*v),
            Value::Rat(v) => serializer.serialize_str(&v.to_string()),
            Value::Text(v) => serializer.serialize_str(v),
        }
    }
}

/// Outcome of one command invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    command: String,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, Value>,
    note: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            note: String::new(),
        }
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    pub fn set_input(&mut self, key: impl Into<String>, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    pub fn set_output(&mut self, key: impl Into<String>, value: Value) {
        self.outputs.insert(key.into(), value);
    }

    pub fn set_note(&mut self, note: impl Into<String>) {
        self.note = note.into();
    }

    pub fn inputs(&self) -> &BTreeMap<String, String> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeMap<String, Value> {
        &self.outputs
    }

    pub fn output(&self, key: &str) -> Option<&Value> {
        self.outputs.get(key)
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    /// Pretty-printed JSON; key order is fixed, so equal reports render to
    /// identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// A scenario block that reruns this invocation and expects exactly the
    /// outputs recorded here.
    pub fn to_scenario_block(&self, name: &str) -> String {
        let mut out = format!("[{name}]\n");
        out.push_str(&format!("op = {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for (k, v) in &self.outputs {
            out.push_str(&format!("expect.{k} = {v}\n"));
        }
        out
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("command", &self.command)?;
        map.serialize_entry("inputs", &self.inputs)?;
        map.serialize_entry("outputs", &self.outputs)?;
        map.serialize_entry("note", &self.note)?;
        map.end()
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(f, "{}: {}", self.command, inputs.join(" "))?;
        for (k, v) in &self.outputs {
            writeln!(f, "{k} = {v}")?;
        }
        if !self.note.is_empty() {
            writeln!(f, "note: {}", self.note)?;
        }
        Ok(())
    }
}
