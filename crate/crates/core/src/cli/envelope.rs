use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    DomainError,
    RangeError,
    PreconditionError,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::DomainError => "domain_error",
            Self::RangeError => "range_error",
            Self::PreconditionError => "precondition_error",
        }
    }
}

impl From<&Error> for Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => Self::DomainError,
            Error::Range(_) | Error::Resource(_) => Self::RangeError,
            Error::Precondition(_) => Self::PreconditionError,
        }
    }
}

/// What every subcommand prints. A failed command carries a message and no result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl OutputEnvelope {
    pub fn ok(command: &str, inputs: BTreeMap<String, Value>, result: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            result: Some(result),
            status: Status::Ok,
            message: None,
        }
    }

    pub fn failed(command: &str, inputs: BTreeMap<String, Value>, error: &Error) -> Self {
        Self {
            command: command.into(),
            inputs,
            result: None,
            status: error.into(),
            message: Some(error.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope values are always serializable")
    }

    /// One `key  value` line per field, keys padded to a common width.
    /// Object results are spread over one line per member.
    pub fn to_plain(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("command".into(), self.command.clone())];
        rows.extend(self.inputs.iter().map(|(k, v)| (k.clone(), plain_value(v))));
        rows.push(("status".into(), self.status.as_str().into()));
        match &self.result {
            Some(Value::Object(members)) => {
                rows.extend(members.iter().map(|(k, v)| (k.clone(), plain_value(v))));
            }
            Some(v) => rows.push(("result".into(), plain_value(v))),
            None => {}
        }
        if let Some(m) = &self.message {
            rows.push(("message".into(), m.clone()));
        }
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn plain_value(v: &Value) -> String {
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
    fn failed_envelopes_have_no_result() {
        let e = OutputEnvelope::failed("factor", BTreeMap::new(), &Error::Domain("zero".into()));
        assert!(e.result.is_none());
        assert_eq!(e.status, Status::DomainError);
        let text = e.to_json();
        assert!(!text.contains("\"result\""));
        assert_eq!(serde_json::from_str::<OutputEnvelope>(&text).unwrap(), e);
    }

    #[test]
    fn plain_rows_are_aligned() {
        let inputs = BTreeMap::from([("n".to_string(), json!(6))]);
        let e = OutputEnvelope::ok("factor", inputs, json!("2^1 * 3^1"));
        assert_eq!(
            e.to_plain(),
            "command  factor\nn        6\nstatus   ok\nresult   2^1 * 3^1\n"
        );
    }
}
