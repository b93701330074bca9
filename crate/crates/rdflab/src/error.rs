use thiserror::Error;

/// Errors shared across the crate. Validation failures carry enough context
/// to point at the offending object.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dyadic interval: k={k}, n={n} at grid exponent L={l}")]
    InvalidInterval { k: u32, n: usize, l: u32 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("squares {a} and {b} overlap (indices {ia}, {ib})")]
    OverlappingSquares {
        a: String,
        b: String,
        ia: usize,
        ib: usize,
    },

    #[error("signal length {0} is not a power of two")]
    BadSignalLength(usize),

    #[error("exponent out of range: {0}")]
    BadExponent(String),

    #[error("empty spatial interval")]
    EmptyInterval,

    #[error("overlapping frequency intervals passed where disjointness is required")]
    OverlappingIntervals,

    #[error("invalid cut grid: {0}")]
    BadCutGrid(String),

    #[error("dominated-input check failed: {0}")]
    NotDominated(String),

    #[error("decomposition precondition violated: {0}")]
    Precondition(String),

    #[error("malformed column/row family: {0}")]
    BadFamily(String),

    #[error("parameter out of admissible range: {0}")]
    BadParameter(String),

    #[error("coefficient family violates the nesting condition: {0}")]
    CarlesonCondition(String),

    #[error("generator infeasible: {0}")]
    Infeasible(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
