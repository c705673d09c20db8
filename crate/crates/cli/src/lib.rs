//! Library side of the `klein` command-line tool.
//!
//! Every subcommand is a function that writes its report to a caller-supplied
//! writer and returns an [`ExitCode`], so the binary stays a thin wrapper and
//! tests can drive the commands directly.

pub mod commands;
pub mod selector;
pub mod verify;

use std::io;

use thiserror::Error;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    /// Everything checked out.
    Pass = 0,
    /// A verification failed.
    VerificationFailed = 1,
    /// The structures are not isomorphic.
    NotIsomorphic = 2,
    /// Bad arguments or unreadable input.
    UsageError = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown selector `{0}`")]
    UnknownSelector(String),
    #[error("format `{format}` is not supported for {what}")]
    UnsupportedFormat { what: String, format: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::UsageError
    }
}
