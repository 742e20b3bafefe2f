use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown operator `{op}` at byte {pos}")]
    UnknownOperator { pos: usize, op: String },
    #[error("parity conflict for generator `{0}`")]
    ParityConflict(String),
    #[error("generator `{generator}` must have degree {expected} in every monomial, found {found}")]
    DegreeViolation { generator: String, expected: usize, found: usize },
    #[error("expression is not homogeneous in `{generator}`: expected degree {expected}, found {found}")]
    NonHomogeneous { generator: String, expected: usize, found: usize },
    #[error("expression is not multihomogeneous")]
    NotMultihomogeneous,
    #[error("expression is not multilinear in the basis variables: {0}")]
    NotMultilinear(String),
    #[error("degree {required} exceeds the degree cap {cap}")]
    DegreeCap { required: usize, cap: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator `{0}` has no assigned value")]
    UnassignedGenerator(String),
    #[error("generator `{0}` is assigned an element of the wrong parity")]
    ParityMismatch(String),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("invalid structure table: {0}")]
    Table(String),
    #[error("unknown algebra selector `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown reproduction target `{0}`")]
    UnknownTarget(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
