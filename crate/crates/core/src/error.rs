use thiserror::Error;

use crate::field_poly::Field;

/// Why a candidate factorization was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvalidFactorization {
    #[error("map {0} is not injective (zero determinant)")]
    NonMonic(usize),
    #[error("x^d times the identity does not factor through the composite")]
    NoClosing,
    #[error("map {map}: entry ({row}, {col}) is not homogeneous of degree {expected}")]
    GradingViolation {
        map: usize,
        row: usize,
        col: usize,
        expected: i64,
    },
    #[error("malformed shape: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree vectors do not chain: {0}")]
    DegreeMismatch(String),
    #[error("cokernel is not annihilated by x^{0}")]
    NotAnnihilated(usize),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(#[from] InvalidFactorization),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
