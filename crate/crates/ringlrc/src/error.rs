use thiserror::Error;

/// Crate-wide error type. Variant names follow the failure they report;
/// the CLI maps `TooManyErasuresInBlock` to exit code 3 (unrecoverable
/// pattern) and everything else to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible mod p: divisible by {0}")]
    ReducibleModulus(String),
    #[error("no default modulus for p = {p}, m = {m}; supply one explicitly")]
    NoDefaultModulus { p: u64, m: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element does not belong to this ring: {0}")]
    RingMismatch(String),
    #[error("root is not simple: {0}")]
    NotASimpleRoot(String),
    #[error("duplicate points in set")]
    DuplicatePoints,
    #[error("{0} does not divide the Teichmüller group order {1}")]
    OrderDoesNotDivide(u64, u64),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("universe is not closed under the subgroup action")]
    UniverseNotClosed,
    #[error("set is not well-conditioned: witness pair at indices {0} and {1}")]
    NotWellConditioned(usize, usize),
    #[error("polynomial is not constant on block {block}: values {first} and {second}")]
    NotConstantOnBlock {
        block: usize,
        first: String,
        second: String,
    },
    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: String },
    #[error("partition blocks are not cosets of the subgroup (block {0})")]
    PartitionNotCosets(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("block size mismatch: {0}")]
    BlockSizeMismatch(String),
    #[error("good polynomial unsuitable: {0}")]
    BadGoodPolynomial(String),
    #[error("divisibility violated: {0}")]
    DivisibilityViolation(String),
    #[error("too many blocks requested: {0}")]
    TooManyBlocksRequested(String),
    #[error("too many erasures in block {block}: {erased} erased, tolerance {tolerance}")]
    TooManyErasuresInBlock {
        block: usize,
        erased: usize,
        tolerance: usize,
    },
    #[error("position {0} is not erased")]
    PositionNotErased(usize),
    #[error("message polynomial degree too high for block {block}: limit {limit}")]
    DegreeTooHigh { block: usize, limit: usize },
    #[error("instance too large: {needed} enumerations exceed cap {cap}")]
    InstanceTooLarge { needed: u128, cap: u128 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("algorithm found no suitable coordinate to extend T")]
    NoSuitableCoordinate,
    #[error("bad erasure model: {0}")]
    BadErasureModel(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
