use thiserror::Error;

/// Error type shared by every module of the crate.
///
/// Messages always echo the offending parameters so that a failure can be
/// reproduced from the log line alone.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A resource cap (level count, iteration budget) would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A numerical routine failed to converge.
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
