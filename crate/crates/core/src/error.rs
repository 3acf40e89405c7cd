use thiserror::Error;

use crate::complex::Face;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex label 0 is reserved")]
    ZeroLabel,
    #[error("facets of a pure complex must share one cardinality (saw {expected} and {found})")]
    Impure { expected: usize, found: usize },
    #[error("join requires disjoint vertex sets; both contain {0}")]
    InvalidJoin(i32),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: isize, right: isize },
    #[error("{0} is not a face of the complex")]
    FaceNotPresent(Face),
    #[error("complex has more than {limit} faces")]
    TooLarge { limit: usize },
    #[error("complex is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("need more than {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("facet {0} of the ball is not a facet of the sphere")]
    NotSubcomplex(Face),
    #[error("apex {0} already belongs to the complex")]
    VertexClash(i32),
    #[error("patterns have different numbers of pairs ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("recursion invariant violated: {0}")]
    RecursionInvariantViolated(String),
    #[error("vertex {0} is not in the hypergraph")]
    UnknownVertex(i32),
    #[error("hyperedges must be nonempty")]
    EmptyEdge,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(message: impl Into<String>) -> Error {
    Error::InvalidParameters(message.into())
}
