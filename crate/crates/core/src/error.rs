use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,
    #[error("coordinate {coord} of point {point:?} lies outside [0, {n})")]
    OutOfBox { point: Vec<i64>, coord: i64, n: i64 },
    #[error("point {point:?} has {got} coordinates, expected {expected}")]
    BadDimension { point: Vec<i64>, expected: usize, got: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("operation requires dimension {expected}, tile has dimension {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("the set does not tile")]
    NotATile,
    #[error("limit exceeded: {what} = {value} above configured maximum {max}")]
    LimitExceeded { what: &'static str, value: u64, max: u64 },
    #[error("duplicate element {0}")]
    Duplicates(i64),
    #[error("tile size {size} does not divide torus volume {volume}")]
    BadDivisibility { size: usize, volume: u64 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("certificate failed to verify: {0}")]
    CertificateFailed(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("bound is vacuous: {0}")]
    VacuousBound(String),
    #[error("translates do not tile: cell {cell:?} covered {times} times")]
    NotATiling { cell: Vec<i64>, times: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code, used in JSON diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySet => "EMPTY_SET",
            Error::OutOfBox { .. } => "OUT_OF_BOX",
            Error::BadDimension { .. } => "BAD_DIMENSION",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::WrongDimension { .. } => "WRONG_DIMENSION",
            Error::BudgetExceeded(_) => "BUDGET_EXCEEDED",
            Error::NotATile => "NOT_A_TILE",
            Error::LimitExceeded { .. } => "LIMIT_EXCEEDED",
            Error::Duplicates(_) => "DUPLICATES",
            Error::BadDivisibility { .. } => "BAD_DIVISIBILITY",
            Error::Degenerate(_) => "DEGENERATE",
            Error::CertificateFailed(_) => "CERTIFICATE_FAILED",
            Error::Domain(_) => "DOMAIN",
            Error::VacuousBound(_) => "VACUOUS_BOUND",
            Error::NotATiling { .. } => "NOT_A_TILING",
            Error::Invalid(_) => "INVALID_INPUT",
        }
    }
}
