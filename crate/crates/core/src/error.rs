//! Error taxonomy shared by every module.

use thiserror::Error;

/// Crate-wide error type.
///
/// `Domain` marks precondition violations on caller-supplied values;
/// everything else is a computation-time failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("overflow error: {0}")]
    Overflow(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("singularity error: {0}")]
    Singularity(String),
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
