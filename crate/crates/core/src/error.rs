use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the algebra library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different structures: {0}")]
    ConfigMismatch(String),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("non-integral division while building Witt polynomials: {0}")]
    IntegralityViolation(String),
    #[error("form degree {0} exceeds the number of variables {1}")]
    DegreeOverflow(usize, usize),
    #[error("dlog of zero")]
    DlogOfZero,
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("norm needs at most one entry outside the base field")]
    NormShapeUnsupported,
    #[error("level shift cannot decrease the level ({from} -> {to})")]
    LevelDecrease { from: usize, to: usize },
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("unsupported degree for this operation: {0}")]
    UnsupportedDegree(String),
    #[error("class is wildly ramified; reduced form {0}")]
    WildClass(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed cache file {path}: {message}")]
    CacheFormat { path: PathBuf, message: String },
    #[error("cache file {0} does not match a fresh computation")]
    VerifyMismatch(PathBuf),
}

pub type Result<T> = std::result::Result<T, Error>;
