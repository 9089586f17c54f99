use std::fmt;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    /// Malformed input or flags.
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }

    /// A group/problem combination with no solver.
    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError { code: 4, message: message.into() }
    }

    /// A solver failed, including witness checks.
    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: 5, message: message.into() }
    }
}

impl From<groupknap::Error> for CliError {
    fn from(e: groupknap::Error) -> Self {
        match e {
            groupknap::Error::Unsupported(m) => CliError::unsupported(m),
            groupknap::Error::Witness(_) => CliError::internal(e.to_string()),
            other => CliError::input(other.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
