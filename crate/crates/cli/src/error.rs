use poisson_deform_core::error::Error as CoreError;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// Process exit code. 2 is left to argument parsing.
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Json(_) | CliError::Input(_) => 4,
            CliError::Core(e) => match e {
                CoreError::Syntax { .. }
                | CoreError::WrongVariable { .. }
                | CoreError::ArityMismatch { .. }
                | CoreError::ExponentOverflow { .. }
                | CoreError::InvalidWeights(_) => 4,
                CoreError::Unsupported(_) => 6,
                CoreError::DegreeCapExceeded { .. } => 7,
                _ => 5,
            },
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Io { .. } => "Io".into(),
            CliError::Json(_) => "Json".into(),
            CliError::Input(_) => "Input".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema_version": crate::spec::SCHEMA_VERSION,
            "error": {
                "kind": self.kind(),
                "code": self.code(),
                "message": self.to_string(),
            }
        })
    }
}

pub type CliResult<T> = Result<T, CliError>;
