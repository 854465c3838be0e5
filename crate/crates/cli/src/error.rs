use thiserror::Error;

use crate::hexmap::HexError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] repfn_core::Error),
    #[error("initial segment: {0}")]
    Hex(#[from] HexError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub mod exit {
    pub const PASS: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const ASSERTION: u8 = 2;
    pub const CEILING: u8 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(repfn_core::Error::ResourceCeiling { .. }) => exit::CEILING,
            _ => exit::USAGE,
        }
    }
}
