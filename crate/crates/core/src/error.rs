use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("characteristic not prime: {0}")]
    NotPrime(u64),
    #[error("characteristic out of range (need 2 <= p < 2^31): {0}")]
    CharOutOfRange(u64),
    #[error("unit relation ideal")]
    UnitRelationIdeal,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("mismatched monomial lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("resolution of length {needed} required but budget allows {allowed}")]
    ResolutionTruncated { needed: usize, allowed: usize },
    #[error("ring not regular")]
    NotRegular,
    #[error("ring not flagged equidimensional")]
    NotEquidimensional,
    #[error("prime table mismatch: {0}")]
    TableMismatch(String),
    #[error("improper ideal: {0}")]
    ImproperIdeal(String),
    #[error("mutual containment between distinct primes `{0}` and `{1}`")]
    MutualContainment(String, String),
    #[error("enumeration too large ({0} functions); pass allow_large to proceed")]
    EnumerationTooLarge(u64),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("finite flat dimension not certified for generator `{0}`")]
    Uncertified(String),
    #[error("invalid session: {0}")]
    InvalidSession(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
