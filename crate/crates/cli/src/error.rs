use std::fmt;

use gwistor::Error as CoreError;

/// Failures mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable input. Exit 2.
    Parse(String),
    /// A tensor component breaks its skew symmetry. Exit 3.
    Symmetry {
        tensor: &'static str,
        indices: Vec<usize>,
    },
    /// A verification failed or the core rejected the input. Exit 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Symmetry { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Symmetry { tensor, indices } => {
                let idx: Vec<String> = indices.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "symmetry violation in {tensor} at indices [{}]",
                    idx.join(", ")
                )
            }
            CliError::Failed(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SymmetryViolation { tensor, indices } => {
                CliError::Symmetry { tensor, indices }
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
