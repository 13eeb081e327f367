use std::fmt;

/// CLI-level errors, each mapped to a distinct exit code:
/// usage 2, capacity 3, verification failure 4, I/O 5.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Capacity(String),
    Verification(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Capacity(m) => write!(f, "capacity error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<hyperiso_core::Error> for CliError {
    fn from(err: hyperiso_core::Error) -> Self {
        if err.is_capacity() {
            CliError::Capacity(err.to_string())
        } else {
            CliError::Usage(err.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
