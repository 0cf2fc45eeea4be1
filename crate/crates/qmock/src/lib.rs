//! Sampling, suite execution and reporting for the identity checks in
//! `qmock-core`, plus the `qmock` command line.

pub mod cli;
pub mod config;
pub mod points;
pub mod report;
pub mod sampler;
pub mod suite;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Usage(_) => EXIT_CONFIG,
            HarnessError::Io(_) => EXIT_IO,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
