use thiserror::Error;

/// Errors produced by the library. Uniformity failures are not errors; they
/// are reported as data in [`crate::graph::UniformityReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid structure tensor: {0}")]
    InvalidTensor(String),

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("search budget of {limit} node visits exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("size guard: {0}")]
    TooLarge(String),

    #[error("input is not uniform: {0}")]
    NotUniform(String),

    #[error("matrix is singular")]
    Singular,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("shared color mode requires equal color counts, got p1={p1} and p2={p2}")]
    ColorCountMismatch { p1: usize, p2: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("undetermined isomorphism between {first} and {second}")]
    Undetermined { first: String, second: String },
}

pub type Result<T> = std::result::Result<T, Error>;
