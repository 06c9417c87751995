use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate basis: generators do not span the ambient space")]
    DegenerateBasis,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("first lattice is not contained in the second")]
    NotSublattice,
    #[error("distance requires localized lattices")]
    DistanceRequiresLocal,
    #[error("quotient of order {order} exceeds the enumeration cap {cap}")]
    QuotientTooLarge { order: String, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported root system {label}{rank}")]
    UnsupportedType { label: String, rank: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("weight {0:?} cannot be reached from the defining realization")]
    UnreachableWeight(Vec<i64>),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("{0:?} is not a weight of the isotypic component")]
    NotAWeight(Vec<i64>),
    #[error("length cap exceeded: {0}")]
    CapExceeded(String),
    #[error("representation is not faithful on the Lie algebra")]
    Unfaithful,
    #[error("unsupported group presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("class group of non-maximal orders out of scope (disc {0})")]
    NonFundamental(i64),
    #[error("orbit grouping implemented for multiplicity-free blocks only")]
    MultiplicityNotFree,
    #[error("iteration did not stabilize: {0}")]
    NoStabilization(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
