use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("size limit exceeded: more than {limit} {what}")]
    SizeLimitExceeded { what: &'static str, limit: usize },
    #[error("not a lattice: `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice is not distributive at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("pair ({0}, {1}) is not in the order")]
    PairNotInOrder(String, String),
    #[error("pair ({0}, {1}) is not in the subdivisible core")]
    NotInCore(String, String),
    #[error("no interpolation procedure for {0}")]
    WitnessSearchFailed(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("`{0}` has no successor along the idealoid")]
    NoSuccessor(String),
    #[error("value {0} is outside [0,1]")]
    OutOfRange(String),
    #[error("value {0} is not dyadic")]
    NonDyadicInput(String),
    #[error("endpoint patterns differ: {0} vs {1}")]
    EndpointMismatch(String, String),
    #[error("no ideal classification for {0}")]
    NoClassification(String),
    #[error("frame is not stably continuous: {0}")]
    NotStablyContinuous(String),
    #[error("no registered de Groot dual for {0}")]
    NoDual(String),
    #[error("operation not supported for {0}")]
    TierUnsupported(String),
    #[error("map is not continuous: {0}")]
    NotContinuous(String),
    #[error("presheaf is not excisive: {0}")]
    NotExcisive(String),
    #[error("sheaf is not stable-excisive: {0}")]
    NotStableExcisive(String),
    #[error("differential squares to a nonzero map in degree {0}")]
    DifferentialSquareNonzero(i32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid element `{0}`")]
    InvalidElement(String),
    #[error("not functorial: {0}")]
    NotFunctorial(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
