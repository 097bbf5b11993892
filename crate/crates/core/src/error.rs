use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Every variant maps onto a short machine-readable code and a process exit
/// status so the command-line front end can report failures in one line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree k={k} outside 1..={n}")]
    DegreeOutOfRange { k: u64, n: u64 },

    #[error("precision exhausted: certified {certified} of {requested} digits")]
    PrecisionExhausted { certified: usize, requested: usize },

    #[error("rational terminated after {available} digits ({requested} requested)")]
    RationalTerminated { available: usize, requested: usize },

    #[error("digit exceeds 64-bit range after {certified} digits")]
    DigitOverflow { certified: usize },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("hypergeometric pole: (c)_n vanishes at n={index}")]
    Pole { index: u64 },

    #[error("data error in {}: {reason}", path.display())]
    Data { path: PathBuf, reason: String },

    #[error("digit cache {}: {reason}", path.display())]
    Cache { path: PathBuf, reason: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("algorithms disagree: {0}")]
    Mismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable identifier printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidInput(_) => "invalid-input",
            Error::DegreeOutOfRange { .. } => "degree-range",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::RationalTerminated { .. } => "rational-terminated",
            Error::DigitOverflow { .. } => "digit-overflow",
            Error::Hypothesis(_) => "hypothesis",
            Error::Pole { .. } => "pole",
            Error::Data { .. } => "data",
            Error::Cache { .. } => "cache",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
            Error::Mismatch(_) => "mismatch",
            Error::Internal(_) => "internal",
        }
    }

    /// Exit status: 2 usage, 3 precision, 4 data, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::DegreeOutOfRange { .. }
            | Error::Hypothesis(_)
            | Error::Pole { .. } => 2,
            Error::PrecisionExhausted { .. }
            | Error::RationalTerminated { .. }
            | Error::DigitOverflow { .. } => 3,
            Error::Data { .. } | Error::Cache { .. } | Error::Csv(_) | Error::Io(_) => 4,
            Error::Mismatch(_) | Error::Internal(_) => 1,
        }
    }

    pub(crate) fn parse(input: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }
}
