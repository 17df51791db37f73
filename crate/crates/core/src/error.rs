use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("wedge degree {0} exceeds the ambient dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("divided square of odd degree needs characteristic 2 (got {0})")]
    OddDegreeWrongCharacteristic(u32),
    #[error("subspaces are not complementary Lagrangians")]
    NotComplementary,
    #[error("not a Lagrangian subspace: {0}")]
    NotLagrangian(String),
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("ideal is not homogeneous")]
    NonHomogeneous,
    #[error("complex is not minimal: unit entry in differential {0}")]
    NonMinimalComplex(usize),
    #[error("chain map does not lift: {0}")]
    NotLiftable(String),
    #[error("Frobenius requires positive characteristic")]
    CharZero,
    #[error("resolution does not match the expected template: {0}")]
    WrongShape(String),
    #[error("even intersection dimension {0} encountered for a locus membership query")]
    OddParityViolation(usize),
    #[error("point does not lie on the locus")]
    PointNotOnLocus,
    #[error("Chern class combination {0} is not divisible by 4")]
    NotDivisibleBy4(i128),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
