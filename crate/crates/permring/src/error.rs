use thiserror::Error;

/// Errors shared by the group, G-set, ring, oracle, and CLI layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation degree must be at least 1, got {0}")]
    InvalidDegree(usize),

    #[error("generator degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order exceeds the configured bound {bound}")]
    OrderBoundExceeded { bound: usize },

    #[error("permutation is not an element of the group")]
    NotAnElement,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("G-sets belong to different groups")]
    GroupMismatch,

    #[error("rings live in different categories")]
    CategoryMismatch,

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("tuple length {length} out of range for a G-set with {points} points")]
    TupleLengthOutOfRange { length: usize, points: usize },

    #[error("construction of {requested} points exceeds the size budget {budget}")]
    SizeBudgetExceeded { requested: usize, budget: usize },

    #[error("prime {prime} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { prime: u32, order: usize },

    #[error("carrier G-set is not transitive")]
    NotTransitive,

    #[error("ring is zero in its category")]
    ZeroRing,

    #[error("operation is not defined in this category")]
    UnsupportedCategory,

    #[error("a prime is required for this computation but none is attached to the category")]
    PrimeRequired,

    #[error("closure candidates are not conjugate; internal consistency failure")]
    NonConjugateClosures,

    #[error("enumeration budget exceeded: {work} items, budget {budget}")]
    BudgetExceeded { work: u64, budget: u64 },

    #[error("count overflows a 64-bit integer")]
    CountOverflow,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Config(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
