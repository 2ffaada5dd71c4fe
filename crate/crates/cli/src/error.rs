use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: point {point} outside 1..{degree}")]
    DegreeMismatch {
        line: usize,
        column: usize,
        point: usize,
        degree: usize,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] pregal_core::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::DegreeMismatch { .. } => "DegreeMismatch",
            CliError::Usage(_) => "UsageError",
            CliError::Io { .. } => "IoError",
            CliError::Domain(e) => e.kind(),
        }
    }

    /// 3 when a search bound was hit, 2 for every other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(pregal_core::Error::BoundExceeded { .. }) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        match self {
            CliError::Parse { line, column, .. } | CliError::DegreeMismatch { line, column, .. } => {
                obj["line"] = json!(line);
                obj["column"] = json!(column);
            }
            CliError::Domain(pregal_core::Error::BoundExceeded { what, needed, limit }) => {
                obj["bound"] = json!({ "what": what, "needed": needed, "limit": limit });
            }
            _ => {}
        }
        json!({ "error": obj })
    }
}
