use thiserror::Error;

/// Errors raised by the numerical kernels and experiment engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("no table entry for p = {0}")]
    MissingTableEntry(usize),

    #[error("generator is not strictly decreasing and positive on [0, 1]: {0}")]
    NonMonotoneGenerator(String),

    #[error("horizon {horizon} is smaller than p = {p}")]
    HorizonTooSmall { p: usize, horizon: usize },

    #[error("sequence x is undefined at m = {0}")]
    UndefinedSequence(usize),

    #[error("grid needs at least {needed} strictly decreasing points in (0, 1], got {got}")]
    GridTooShort { needed: usize, got: usize },

    #[error("invalid dimensions: {0}")]
    Dimensions(String),

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("eigenvalues must be strictly descending, found a tie at index {0}")]
    TiedEigenvalues(usize),

    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
    },

    #[error("number of trials must be positive")]
    NoTrials,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot parse expression {expr:?}: {msg}")]
    Expression { expr: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        func,
        msg: msg.into(),
    }
}
