use heis_core::HeisError;
use serde_json::{json, Value};

/// Input errors; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("input is not in {predicate}: {detail}")]
    NotMember {
        predicate: &'static str,
        detail: String,
    },

    #[error("{0}")]
    Core(HeisError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<HeisError> for CliError {
    fn from(err: HeisError) -> Self {
        match err {
            HeisError::NotMember { predicate, detail } => CliError::NotMember { predicate, detail },
            HeisError::DimensionMismatch { .. }
            | HeisError::ZeroDimension
            | HeisError::NotSquare { .. } => CliError::Dimension(err.to_string()),
            HeisError::Malformed(msg) => CliError::Malformed(msg),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Malformed(_) => "malformed_input",
            CliError::Dimension(_) => "dimension_mismatch",
            CliError::NotMember { .. } => "not_member",
            CliError::Core(_) => "invalid_input",
            CliError::Io(_) => "io",
        }
    }

    /// Diagnostic document written to stderr.
    pub fn diagnostic(&self) -> Value {
        let mut doc = json!({ "error": self.kind(), "message": self.to_string() });
        if let CliError::NotMember { predicate, .. } = self {
            doc["predicate"] = Value::String((*predicate).to_string());
        }
        doc
    }
}
