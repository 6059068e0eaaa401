use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver has a directed cycle through vertices {0:?}")]
    CyclicQuiver(Vec<String>),
    #[error("quiver is disconnected: vertices {0:?} are unreachable from {1:?}")]
    DisconnectedQuiver(Vec<String>, String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("Euler matrix is singular")]
    SingularEuler,
    #[error("dimension vector has a negative entry")]
    NegativeEntry,
    #[error("quiver is not Euclidean")]
    NotEuclidean,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("vector is not in the domain D(delta)")]
    NotInDomain,
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("enumeration box of {0} candidates exceeds the limit of {1}")]
    BoxTooLarge(u128, u128),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}
