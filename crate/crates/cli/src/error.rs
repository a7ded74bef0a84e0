use thiserror::Error;

/// Exit code when every verified inequality passed or nothing was verified.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
/// At least one report has `passed = false`; the output is still written.
pub const EXIT_VERIFICATION_FAILED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<hyperslice::Error> for CliError {
    fn from(e: hyperslice::Error) -> Self {
        match e {
            hyperslice::Error::Numerical(msg) => CliError::Numerical(msg),
            other => CliError::Config(other.to_string()),
        }
    }
}
