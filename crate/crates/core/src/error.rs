use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    UniformityTooSmall(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    EdgeSize {
        edge: Vec<usize>,
        got: usize,
        expected: usize,
    },
    #[error("need n >= k, got n = {n}, k = {k}")]
    TooFewVertices { n: usize, k: usize },
    #[error("empty part in cylinder specification")]
    EmptyPart,
    #[error("uniformity mismatch: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(i64),
    #[error("interpolated coefficient of degree {degree} is not an integer: {value}")]
    NonIntegral { degree: usize, value: String },
    #[error("nonzero remainder in exact division: {0}")]
    NonzeroRemainder(String),
    #[error("root finding did not converge: achieved residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("eigenvector must have a nonzero entry")]
    ZeroVector,
    #[error("vector length {got} does not match vertex count {expected}")]
    VectorLength { got: usize, expected: usize },
    #[error("requested codegree {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("job too large: {0}")]
    TooLarge(String),
    #[error("eigenpair check failed: residual {residual:e} above tolerance {tol:e}")]
    InvalidEigenpair { residual: f64, tol: f64 },
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
