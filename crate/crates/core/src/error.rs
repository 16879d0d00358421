use thiserror::Error;

/// Errors raised by the library. Negative decisions (a subgraph is absent,
/// a minor does not exist) are never errors; they are returned as data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph too large: {what} needs {needed} vertices, limit is {limit}")]
    Size {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("search budget exceeded for {op}: input has {size} vertices, advisory limit is {limit}")]
    Budget {
        op: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid certificate: {0}")]
    Certificate(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget(op: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::Budget { op, size, limit })
    } else {
        Ok(())
    }
}
