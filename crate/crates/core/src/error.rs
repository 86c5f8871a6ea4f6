use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity must be at least 1")]
    ZeroCapacity,

    #[error("element {value} outside 1..={capacity}")]
    OutOfRange { value: u64, capacity: u64 },

    #[error("shifting by {shift} moves element {max} past capacity {capacity}")]
    ShiftOverflow { max: u64, shift: u64, capacity: u64 },

    #[error("autocorrelation at gap {gap} is {value}, too far from an integer to round safely")]
    PrecisionLoss { gap: u64, value: f64 },

    #[error("malformed set encoding: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("brute force enumeration supports n <= {max}, got {n}")]
    CapacityExceeded { n: u64, max: u64 },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("{samples} samples is too few, need at least {required}")]
    Undersampled { samples: usize, required: usize },

    #[error("sets overlap at {0}; the base set has a square difference equal to the shift")]
    NotDisjoint(u64),

    #[error("quadrature for lambda = {lambda} did not converge within {panels} panels")]
    ToleranceNotReached { lambda: f64, panels: usize },

    #[error("gcd({a}, {q}) != 1")]
    NotCoprime { a: i64, q: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shift {shift} exceeds capacity {capacity}")]
    ShiftTooLarge { shift: String, capacity: u64 },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
