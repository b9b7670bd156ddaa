use std::fmt;

/// Exit code for bad input: flags, files, specs or numeric parameters.
pub const EXIT_USAGE: u8 = 2;
/// Exit code for a broken internal invariant.
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// An identity or self-check failed; `report` is dumped to stderr.
    Invariant {
        message: String,
        report: String,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invariant { .. } => EXIT_INVARIANT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Invariant { message, report } => write!(f, "invariant violated: {message}\n{report}"),
        }
    }
}

impl std::error::Error for CliError {}
