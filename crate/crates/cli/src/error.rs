use thiserror::Error;

/// Exit codes: 0 success, 1 i/o or internal, 2 parse, 3 unsupported ring,
/// 4 verification failure, 5 resource cap.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const UNSUPPORTED: i32 = 3;
    pub const VERIFICATION: i32 = 4;
    pub const RESOURCE: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Core(#[from] nilclean::Error),

    /// `output` is the full verification report; `failed` names the checks.
    #[error("verification failed: {}", failed.join(", "))]
    Verification { output: String, failed: Vec<String> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        use nilclean::Error as E;
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Core(E::InvalidInput(_) | E::Domain(_)) => exit::PARSE,
            CliError::Core(E::UnsupportedModulus { .. } | E::UnsupportedField(_)) => {
                exit::UNSUPPORTED
            }
            CliError::Core(E::ResourceCap { .. }) => exit::RESOURCE,
            CliError::Core(E::Internal(_)) | CliError::Io(_) => exit::INTERNAL,
            CliError::Verification { .. } => exit::VERIFICATION,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
