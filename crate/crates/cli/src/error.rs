use std::fmt;

/// Exit status contract: 0 success, 1 internal error, 2 invalid input.
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// A failure, classified by who has to fix it.
#[derive(Debug)]
pub enum CliError {
    /// Bad input files, flags or configuration.
    Invalid(anyhow::Error),
    /// Anything else, such as failing to write an output file.
    Internal(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, e) = match self {
            CliError::Invalid(e) => ("invalid input", e),
            CliError::Internal(e) => ("error", e),
        };
        write!(f, "{tag}: {e:#}")
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Internal(e)
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// Marks an error as caused by the user's input.
pub trait Invalid<T> {
    fn invalid(self, context: impl fmt::Display) -> CliResult<T>;
}

impl<T, E> Invalid<T> for Result<T, E>
where
    E: Into<anyhow::Error>,
{
    fn invalid(self, context: impl fmt::Display) -> CliResult<T> {
        self.map_err(|e| CliError::Invalid(e.into().context(context.to_string())))
    }
}

pub fn invalid(message: impl fmt::Display) -> CliError {
    CliError::Invalid(anyhow::anyhow!("{message}"))
}
