use thiserror::Error;

use crate::field::FieldSpec;

/// Errors raised by the algebra routines.
///
/// Verification failures and "no solution" outcomes are reported as data,
/// not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial division leaves a remainder")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("characteristic polynomial does not split over the base field")]
    NotSplit,
    #[error("matrix is singular")]
    Singular,
    #[error("subalgebra basis invalid: {0}")]
    InvalidBasis(String),
    #[error("embedding does not carry the inner algebra onto the outer base")]
    BaseMismatch,
    #[error("operation requires systems over the ground field")]
    NonGroundBase,
    #[error("system must have at least one dual pair")]
    DegenerateSystem,
    #[error("system does not pass verification")]
    UnverifiedSystem,
    #[error("symbolic determinant refused for dimension {0} (limit {1})")]
    DimensionTooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
