use thiserror::Error;

/// Domain errors: inputs that are well formed but violate an invariant or a
/// precondition of an operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chain mismatch: expected a chain of size {expected}, got {found}")]
    ChainMismatch { expected: usize, found: usize },
    #[error("invalid monotone map: {0}")]
    InvalidMap(String),
    #[error("radicand {0} is not allowed here: {1}")]
    InvalidRadicand(u64, String),
    #[error("cannot combine sqrt({0}) and sqrt({1}) in a single scalar")]
    MixedRadicals(u64, u64),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("coordinate {index} = {value} does not lie in factor {factor}")]
    NotInFactor {
        index: usize,
        value: String,
        factor: String,
    },
    #[error("expected {expected} coordinates, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("level {level} out of range 0..={rank}")]
    LevelOutOfRange { level: usize, rank: usize },
    #[error("the zero element has no archimedean class")]
    ZeroElement,
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("the image is not a cut: the coset {0} meets both sides")]
    ImageNotACut(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
