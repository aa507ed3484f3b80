use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus must be at least 3, got {0}")]
    ModulusTooSmall(u64),
    #[error("residue {q} is outside 0 < q < {p}")]
    ResidueOutOfRange { q: u64, p: u64 },
    #[error("partial quotient e_{index} = {value} is smaller than 2")]
    PartialQuotientTooSmall { index: usize, value: i64 },
    #[error("empty continued fraction")]
    EmptyContinuedFraction,
    #[error("{n}/{m} is not a reduced proper fraction")]
    NotReducedFraction { n: u64, m: u64 },
    #[error("Farey scale must be a positive rational, got {0}")]
    InvalidFareyScale(String),
    #[error("arithmetic budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("invalid arrangement: {0}")]
    Arrangement(#[from] crate::arrangements::ArrangementError),
    #[error("cannot parse {what}: {message}")]
    Parse { what: &'static str, message: String },

    #[error("partition system has no positive solutions")]
    NoSolutions,
    #[error("partition does not match the system: {0}")]
    PartitionMismatch(String),
    #[error("exceptional divisor {divisor} gets multiplicity 0 mod p")]
    ExceptionalVanishes { divisor: String },
    #[error("no good partition found in {tries} tries")]
    ExhaustedTries { tries: u64 },

    #[error("internal error: {what} = {value} is not an integer")]
    NonIntegral { what: &'static str, value: String },
    #[error("internal error: Noether's formula fails (12 chi = {twelve_chi}, c1^2 + c2 = {sum})")]
    NoetherViolation { twelve_chi: String, sum: String },
    #[error("log c2 of the arrangement is zero; the log Chern ratio is undefined")]
    ZeroLogC2,
}
