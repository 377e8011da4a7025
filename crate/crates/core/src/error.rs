use thiserror::Error;

/// Errors raised by the library.
///
/// Validation problems that callers are expected to inspect (cocycle checks,
/// complex checks, sutured checks) are returned as diagnostic reports instead;
/// these variants are for inputs an operation refuses to work with.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range 1..={count}")]
    InvalidGenerator { index: i32, count: usize },

    #[error("empty relator at position {0}")]
    EmptyRelator(usize),

    #[error("cocycle violates relator {index}: signed sum is {sum}")]
    CocycleViolation { index: usize, sum: i64 },

    #[error("cocycle has {got} values but the group has {expected} generators")]
    CocycleArity { expected: usize, got: usize },

    #[error("cocycle is identically zero")]
    ZeroCocycle,

    #[error("cocycle is not primitive (gcd {0})")]
    NotPrimitive(i64),

    #[error("quotient does not kill relator {index}")]
    QuotientViolation { index: usize },

    #[error("malformed quotient: {0}")]
    MalformedQuotient(String),

    #[error("quotient of degree {fine} does not refine quotient of degree {coarse}")]
    NotRefining { coarse: usize, fine: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("boundary composite nonzero in degree {degree}")]
    NotAComplex { degree: usize },

    #[error("cells are not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid schedule: {0}")]
    Schedule(String),

    #[error("schedule item {index} is invalid: {source}")]
    ScheduleItem {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sutured data rejected: {0}")]
    Sutured(String),

    #[error("builder input rejected: {0}")]
    Builder(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
