//! Crate-wide error type. Everything fallible returns `Result<T>`.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is reducible over GF({p})")]
    NotIrreducible { p: u64 },
    #[error("unsupported extension degree {0} (supported: 1..=6)")]
    UnsupportedDegree(u32),
    #[error("no built-in modulus for GF({p}^{m}); pass one explicitly")]
    ModulusRequired { p: u64, m: u32 },
    #[error("field order {q} exceeds the 2^16 limit")]
    FieldTooLarge { q: u128 },
    #[error("value {value} is not a canonical element of a field of order {q}")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("division by zero")]
    DivideByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("generator matrix has rank zero")]
    ZeroCode,
    #[error("the dual of the full space is the zero code")]
    TrivialDual,
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("bad coordinate set: {0}")]
    BadIndex(String),
    #[error("operation left an empty result")]
    EmptyResult,
    #[error("bad subset size {k} for a sequence of length {n}")]
    BadK { k: usize, n: usize },
    #[error("bad construction: {0}")]
    BadSpec(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("distance {d} is neither 2*{ell}+1 nor 2*{ell}+2")]
    BadDistance { d: usize, ell: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
