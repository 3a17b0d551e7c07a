use std::fmt;

use schatten_lambda::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO_OR_PARSE: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const VERIFICATION: u8 = 3;
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unwritable file.
    Io { path: String, source: std::io::Error },
    /// File contents that are not a valid matrix.
    Parse { path: String, source: CoreError },
    /// Flag combinations clap cannot express.
    Usage(String),
    /// A precondition of the underlying operation failed.
    Domain(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => exit::IO_OR_PARSE,
            CliError::Domain(_) => exit::DOMAIN,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Parse { path, source } => write!(f, "{path}: {source}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(e)
    }
}
