use thiserror::Error;

/// Errors raised by validation, measures and I/O.
///
/// Indices carried by the matrix variants are 1-based so they can be echoed
/// to users verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("entry ({0}, {1}) is not a finite number")]
    NonFinite(usize, usize),

    #[error("negative distance at ({0}, {1})")]
    NegativeEntry(usize, usize),

    #[error("asymmetric entry at ({0}, {1})")]
    AsymmetricEntry(usize, usize),

    #[error("d({0},{1}) = 0 but d({0},{2}) != d({1},{2})")]
    InconsistentDuplicate(usize, usize, usize),

    #[error("diagonal entry {0} is not 1")]
    DiagonalNotOne(usize),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("measure needs at least {min} elements, got {n}")]
    NTooSmall { n: usize, min: usize },

    #[error("instance of size {n} exceeds the exact-solver limit {n_max}")]
    InstanceTooLarge { n: usize, n_max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("species order q must satisfy q >= 0 and q != 1, got {0}")]
    InvalidOrder(f64),

    #[error("species row sum {sum:e} at row {row} is not positive")]
    NonPositiveRowSum { row: usize, sum: f64 },

    #[error("point {index} lies outside the {space} domain")]
    PointOutOfDomain { index: usize, space: &'static str },

    #[error("point {index} has {got} coordinates, {space} needs {expected}")]
    PointArity { index: usize, got: usize, expected: usize, space: &'static str },

    #[error("unknown space `{0}`")]
    UnknownSpace(String),

    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),

    #[error("unknown registry case `{0}`")]
    UnknownCase(String),

    #[error("no integer clique size solves the reduction identity for value {0}")]
    NoIntegerSolution(f64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
