use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of a waveform function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// Inputs violate a documented precondition (shapes, ordering, ranges).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("degenerate self pilot |p̄| < 1e-12 at filter {filter}, symbol {symbol}")]
    DegeneratePilot { filter: usize, symbol: usize },

    /// A message-passing guard tripped; `step` follows the detector's 1..=8 schedule.
    #[error("numerical guard at iteration {iteration}, step {step}: {detail}")]
    Guard {
        iteration: usize,
        step: u8,
        detail: String,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("size guard: {0}")]
    Size(String),

    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the numerical guards (degenerate pilots, factorization, message positivity).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegeneratePilot { .. } | Error::Guard { .. } | Error::Numerical(_)
        )
    }
}
