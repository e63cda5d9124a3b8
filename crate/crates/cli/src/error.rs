use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Schema(String),
    #[error("{what}{}: {source}", at.map_or(String::new(), |(l, c)| format!(" at line {l}, column {c}")))]
    Parse {
        what: String,
        at: Option<(usize, usize)>,
        source: nahyp::Error,
    },
    #[error(transparent)]
    Core(#[from] nahyp::Error),
}

impl CliError {
    /// Subsystem tag printed with the message.
    pub fn module(&self) -> &'static str {
        match self {
            CliError::Io(_) | CliError::Json { .. } | CliError::Schema(_) => "cli",
            CliError::Parse { .. } => "poly_core",
            CliError::Core(e) => e.module(),
        }
    }
}
