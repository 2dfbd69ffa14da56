use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// What every subcommand emits, in JSON or rendered for humans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    /// Subcommand path, e.g. `"curve report"`.
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Option<Value>,
    pub error: Option<ErrorInfo>,
    pub warnings: Vec<Warning>,
    /// Process exit status: 0 on success (warnings allowed), 1 for a failed
    /// computation, 2 for a usage error.
    pub status: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Computation,
}

impl ErrorKind {
    pub fn status(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Computation => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WarningKind {
    /// A computed value disagrees with a recorded one.
    Discrepancy,
    /// A recorded field disagrees with its recomputation.
    Mismatch,
    Note,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Warning {
    pub kind: WarningKind,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Warning {
    pub fn note(message: impl Into<String>) -> Self {
        Self { kind: WarningKind::Note, message: message.into(), data: None }
    }
}

impl ReportEnvelope {
    pub fn ok(command: &str, inputs: Map<String, Value>, result: Value, warnings: Vec<Warning>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            result: Some(result),
            error: None,
            warnings,
            status: 0,
        }
    }

    pub fn failed(command: &str, inputs: Map<String, Value>, error: ErrorInfo, warnings: Vec<Warning>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            result: None,
            status: error.kind.status(),
            error: Some(error),
            warnings,
        }
    }
}
