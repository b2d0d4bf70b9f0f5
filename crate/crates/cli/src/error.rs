use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown subcommand: {0}")]
    UnknownSubcommand(String),
    #[error("bad flag: {0}")]
    BadFlag(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    /// Help or version text requested; not a failure.
    #[error("{0}")]
    Info(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] orbitq::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: 2 for usage errors, 3 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::UnknownSubcommand(_) | CliError::BadFlag(_) | CliError::MissingInput(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
