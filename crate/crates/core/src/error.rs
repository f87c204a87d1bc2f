use thiserror::Error;

/// Which semilattice law a table violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Law {
    Commutativity,
    Associativity,
    Idempotence,
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Idempotence => "idempotence",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty semilattice")]
    Empty,
    #[error("join table is not square (row {row} has length {len}, expected {size})")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("table entry {value} at ({x},{y}) is out of range")]
    OutOfRange { x: usize, y: usize, value: usize },
    #[error("{law} fails at {witness:?}")]
    ViolatedLaw {
        law: Law,
        witness: (usize, usize, usize),
    },
    #[error("order relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("map has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("map does not preserve the join of {0} and {1}")]
    NotJoinPreserving(usize, usize),
    #[error("map is not monotone at {0} <= {1}")]
    NotMonotone(usize, usize),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("size {size} exceeds the configured cap {cap}")]
    SizeBudget { size: u128, cap: u128 },
    #[error("candidate space {space} exceeds the configured budget {cap}")]
    CandidateSpaceExceeded { space: u128, cap: u128 },
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("spans do not share a domain")]
    DomainMismatch,
    #[error("endomorphism is not idempotent")]
    NotIdempotent,
    #[error("semilattice is not a distributive lattice")]
    NotDistributive,
    #[error("crown index must be at least 3, got {0}")]
    CrownTooSmall(usize),
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("category has no Reedy data")]
    NoReedyData,
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
