use thiserror::Error;

use crate::poly::Homogeneity;

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("{0} is not prime (or exceeds 32 bits)")]
    InvalidPrime(u64),

    #[error("coefficient {0} is not an integer")]
    NotIntegral(String),

    #[error("coefficient {0} has a denominator divisible by {1}")]
    NotInvertibleModP(String, u64),

    #[error("polynomial rings support at most {max} variables, got {got}")]
    TooManyVariables { got: usize, max: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("entry ({row}, {col}) has degree {found:?}, expected {expected}")]
    InhomogeneousEntry { row: usize, col: usize, expected: i64, found: Homogeneity },

    #[error("differential composite at position {position} is nonzero at entry ({row}, {col})")]
    NonzeroSquare { position: usize, row: usize, col: usize },

    #[error("differential at position {position} has map degree {found}, expected +1")]
    WrongMapDegree { position: usize, found: i64 },

    #[error("differential at position {position} has a constant entry at ({row}, {col}); image is not inside m")]
    NotMinimal { position: usize, row: usize, col: usize },

    #[error("operation requires field coefficients, ring is {0}")]
    NotAField(String),

    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("dual shift {dual} collides with primal degree {primal}; choose n >= {minimum}")]
    ShiftTooSmall { dual: i64, primal: i64, minimum: i64 },

    #[error("degree bound {bound} is below the largest expected degree {needed}")]
    DegreeBoundTooSmall { bound: i64, needed: i64 },
}
