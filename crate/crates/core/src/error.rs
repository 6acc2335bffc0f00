use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("path {0} is not composable")]
    NotComposable(String),
    #[error("quiver has an oriented cycle through `{0}`")]
    Cycle(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relations from `{source_vertex}` to `{target_vertex}` are linearly dependent")]
    DependentRelations {
        source_vertex: String,
        target_vertex: String,
    },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for {n} vertices")]
    InvalidIndex { index: usize, n: usize },
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("integer overflow")]
    Overflow,
    #[error("{n} vertices exceed the search ceiling of {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("no root y ≤ {0} has an anisotropic interval and q(v − y) = 0")]
    NoReflectionChain(String),
    #[error("representation mismatch: {0}")]
    RepMismatch(String),
    #[error("{prime} divides the denominator of a relation coefficient")]
    BadPrime { prime: u32 },
}
