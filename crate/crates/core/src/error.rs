use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent denominator {needed} exceeds the configured maximum {max}")]
    DenominatorOverflow { needed: i64, max: i64 },
    #[error("half_twist needs integer exponents, found q^({0})")]
    NonIntegerExponent(String),
    #[error("translation by 1 needs exponents in (1/2)Z, found q^({0})")]
    NonHalfIntegerExponent(String),
    #[error("unknown lattice `{0}`")]
    UnknownLattice(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pairing {0} is not an integer; the vector is not in the dual lattice")]
    NotInDual(String),
    #[error("invalid weight {weight}: {reason}")]
    InvalidWeight { weight: String, reason: String },
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(String, String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("plus-space condition fails at exponent {0}")]
    PlusSpaceViolation(String),
    #[error("coefficient at ({n},{r}) violates holomorphic support for index {m}")]
    SupportViolation { n: i64, r: i64, m: i64 },
    #[error("form is not decomposable in the registered basis of weight {0}")]
    NotDecomposable(i64),
    #[error("request not admissible: {0}")]
    Inadmissible(String),
    #[error("pullback vector must be nonzero")]
    ZeroVector,
    #[error("odd weight {0} lift requires c(0,0) = 0")]
    OddWeightNonCusp(i64),
    #[error("requested {what} {requested} beyond truncation {available}")]
    BeyondTruncation {
        what: &'static str,
        requested: i64,
        available: i64,
    },
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("unsupported root system `{name}`: {reason}")]
    UnsupportedRootSystem { name: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
