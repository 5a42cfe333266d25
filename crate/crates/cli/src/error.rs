use thiserror::Error;

/// Errors surfaced by the command-line layer, mapped onto process exit
/// codes: 2 configuration, 3 numeric, 4 I/O.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("I/O failure: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<ptmcom_core::Error> for CliError {
    fn from(e: ptmcom_core::Error) -> Self {
        match e {
            ptmcom_core::Error::InvalidArgument(m) | ptmcom_core::Error::InvalidParams(m) => {
                CliError::Config(m)
            }
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
