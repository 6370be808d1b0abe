use thiserror::Error;

/// Errors raised by group construction, character computations and the
/// cover/divisor formulas.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group too large: closure exceeds {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("conductor too large: {conductor} exceeds {bound}")]
    ConductorTooLarge { conductor: u64, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a Galois element: gcd({k}, {conductor}) != 1")]
    NotGaloisElement { k: i64, conductor: u64 },
    #[error("no suitable prime below {0}")]
    NoSuitablePrime(u64),
    #[error("table computation failed: {0}")]
    TableComputationFailed(String),
    #[error("invalid character table: {0}")]
    InvalidCharacterTable(String),
    #[error("incompatible class functions")]
    IncompatibleClassFunctions,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("unknown Galois orbit index {0}")]
    UnknownOrbit(usize),
    #[error("invalid branch data: {0}")]
    InvalidBranchData(String),
    #[error("branch data not consistent with a cover: {0}")]
    InconsistentCover(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
