//! Results as JSON payloads plus human-readable text.

use ore_core::ring::OreRing;
use ore_core::{Error, Operator, OperatorMatrix, Rational};
use serde_json::{json, Map, Value};

/// Process status; the discriminant is the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Precondition = 1,
    Parse = 2,
    SearchFailure = 3,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Precondition => "precondition-violated",
            Status::Parse => "parse-error",
            Status::SearchFailure => "search-failure",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Parse { .. } => Status::Parse,
            Error::SearchExhausted { .. } => Status::SearchFailure,
            _ => Status::Precondition,
        }
    }
}

pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub text: String,
}

impl CommandResult {
    pub fn failure(e: &Error) -> Self {
        CommandResult {
            status: Status::of_error(e),
            payload: json!({ "error": e.to_string() }),
            text: format!("error: {e}"),
        }
    }

    /// A command line that does not match the grammar of any subcommand.
    pub fn usage_error(msg: &str) -> Self {
        CommandResult {
            status: Status::Parse,
            payload: json!({ "error": msg }),
            text: msg.to_string(),
        }
    }

    /// Set for failed commands, as opposed to completed ones with a failing
    /// verdict.
    pub fn is_error(&self) -> bool {
        self.payload.get("error").is_some()
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("status".into(), Value::from(self.status.as_str()));
        let key = if self.is_error() { "detail" } else { "result" };
        out.insert(key.into(), self.payload.clone());
        Value::Object(out)
    }
}

/// A ring the command line can print.
pub trait Emit: OreRing<Scalar = Rational> {
    fn emit(&self) -> Value;
}

impl Emit for Operator {
    fn emit(&self) -> Value {
        Value::from(self.to_string())
    }
}

impl Emit for OperatorMatrix {
    fn emit(&self) -> Value {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        json!({ "size": self.size(), "rows": rows })
    }
}

/// Named fields, kept in order for the text rendering.
#[derive(Default)]
pub struct Record {
    fields: Vec<(String, Value, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ring<R: Emit>(mut self, name: &str, r: &R) -> Self {
        self.fields.push((name.into(), r.emit(), r.to_string()));
        self
    }

    pub fn text(mut self, name: &str, s: impl Into<String>) -> Self {
        let s = s.into();
        self.fields.push((name.into(), Value::from(s.clone()), s));
        self
    }

    pub fn value(mut self, name: &str, v: Value) -> Self {
        let shown = match &v {
            Value::String(s) => s.clone(),
            Value::Null => "none".into(),
            other => other.to_string(),
        };
        self.fields.push((name.into(), v, shown));
        self
    }

    pub fn done(self) -> CommandResult {
        let mut payload = Map::new();
        let mut text = String::new();
        for (name, v, shown) in self.fields {
            text.push_str(&format!("{name} = {shown}\n"));
            payload.insert(name, v);
        }
        CommandResult {
            status: Status::Ok,
            payload: Value::Object(payload),
            text,
        }
    }
}
