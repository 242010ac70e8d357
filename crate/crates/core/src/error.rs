use thiserror::Error;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("Gamma pole at {0}")]
    Pole(String),
    #[error("no convergence: {reason} (last estimate {last_estimate:e}, error {err_est:e})")]
    Convergence {
        reason: String,
        last_estimate: f64,
        err_est: f64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("normalisation is not positive at indices {0:?}")]
    Normalization(Vec<i64>),
    #[error("scan failed: {0}")]
    Scan(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(reason: impl Into<String>, last_estimate: f64, err_est: f64) -> Self {
        Error::Convergence {
            reason: reason.into(),
            last_estimate,
            err_est,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
