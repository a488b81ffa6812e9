use std::path::PathBuf;

use polyadjoint_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::CapacityExceeded { .. }) => exit::CAPACITY,
            _ => exit::INPUT,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub mod exit {
    pub const PASS: u8 = 0;
    pub const CLAIM_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const CAPACITY: u8 = 3;
}

pub type Result<T> = std::result::Result<T, CliError>;
