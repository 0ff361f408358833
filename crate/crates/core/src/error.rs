use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set {0:?} is not a simplex")]
    NotASimplex(Vec<usize>),

    #[error("clique of size {size} exceeds the clique cap {cap}")]
    CliqueCapExceeded { size: usize, cap: usize },

    #[error("cycle length {requested} outside 3..={cap}")]
    CycleCapExceeded { requested: usize, cap: usize },

    #[error("vertex count {count} exceeds the cap {cap}")]
    VertexCapExceeded { count: usize, cap: usize },

    #[error("complex is disconnected")]
    Disconnected,

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("invalid vertex map: {0}")]
    InvalidMap(String),

    #[error("composed map has an empty domain")]
    EmptyDomain,

    #[error("no vertex has a certified displacement (window too small)")]
    NoCertifiedVertices,

    #[error("isometry is elliptic (fixes the simplex {0:?})")]
    Elliptic(Vec<usize>),

    #[error("isometry does not restrict to its minimal displacement set (vertex {0})")]
    DoesNotRestrict(usize),

    #[error("loop is not valid: {0}")]
    InvalidLoop(String),
}

pub type Result<T> = std::result::Result<T, Error>;
