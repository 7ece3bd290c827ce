use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("exponent {0} lies outside the frame's lattice directions")]
    OutsideLattice(String),
    #[error("non-integral pairing or cocycle argument: {0}")]
    NonIntegral(String),
    #[error("state is not an eigenvector: {0}")]
    NotEigen(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unreachable in this realization: {0}")]
    Unreachable(String),
    #[error("incompatible module data: {0}")]
    Incompatible(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
