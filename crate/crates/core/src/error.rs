use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    /// An exhaustive computation would exceed its configured size limit.
    #[error("{what} needs {needed} but the limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("EDCS fix-up did not converge after {iterations} steps ({violations} violations left)")]
    EdcsDiverged { iterations: u64, violations: usize },

    #[error("rounding lost too much weight: integral {integral} < (1 - {epsilon}) * fractional {fractional}")]
    Rounding {
        integral: f64,
        fractional: f64,
        epsilon: f64,
    },

    #[error("sweep point {point}: {source}")]
    SweepPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
