use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed instance document: {0}")]
    Format(String),

    #[error("edge {index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },

    #[error("edge {index}: endpoints must satisfy 1 <= u < v <= n, got [{u}, {v}] with n = {n}")]
    VertexOutOfRange { index: usize, u: usize, v: usize, n: usize },

    #[error("edge {index}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { index: usize, u: usize, v: usize },

    #[error("edge {index}: non-positive weight {weight} on {{{u}, {v}}}")]
    NonPositiveWeight { index: usize, u: usize, v: usize, weight: f64 },

    #[error("an instance needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("missing edge {{{u}, {v}}} required by the clique at i = {i}")]
    MissingCliqueEdge { i: usize, u: usize, v: usize },

    #[error("degenerate triple v{a}, v{b}, v{c}: points are collinear")]
    DegenerateTriple { a: usize, b: usize, c: usize },

    #[error("torsion cosine at i = {i} is {value}, outside [-1, 1]; the clique distances are not realizable in 3D")]
    TorsionOutOfRange { i: usize, value: f64 },

    #[error("bit string has length {actual}, expected {expected}")]
    BitLength { expected: usize, actual: usize },

    #[error("invalid bit string {0:?}")]
    BitString(String),

    #[error("oracle parameters violate the threshold hypotheses: {0}")]
    OracleParams(String),

    #[error("search space of {size} candidates exceeds the scan cap of {cap}")]
    ScanCapExceeded { size: u64, cap: u64 },

    #[error("no solution found")]
    NoSolution,

    #[error("marked set is empty")]
    EmptyMarkedSet,

    #[error("marked set covers every outcome")]
    AllMarked,

    #[error("marked index {index} out of range for {size} outcomes")]
    MarkedOutOfRange { index: usize, size: usize },

    #[error("search-space size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid Grover plan: need 1 <= M < N, got M = {marked}, N = {size}")]
    InvalidPlan { size: usize, marked: usize },

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("distributions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("row {row}: {message}")]
    Csv { row: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
