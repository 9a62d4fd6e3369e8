use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ratio must satisfy 0 < xi < 1/2 (got {0})")]
    RatioOutOfRange(String),

    #[error("malformed ratio {0:?}: expected an exact fraction p/q")]
    MalformedRatio(String),

    #[error("operation requires a rational ratio, got {0}")]
    NotRational(String),

    #[error("generation {requested} exceeds the configured maximum {max}")]
    GenerationTooLarge { requested: u32, max: u32 },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("polynomial must be monic (leading coefficient {0})")]
    NotMonic(i64),

    #[error("malformed polynomial {0:?}: expected comma-separated integers, highest degree first")]
    MalformedPolynomial(String),

    #[error("point {modulus} lies outside the closed unit disk")]
    OutsideDisk { modulus: f64 },

    #[error("length mismatch: need at least {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("division by zero: constant term of the divisor vanishes")]
    ZeroDivisor,

    #[error("degree {requested} exceeds the configured maximum {max}")]
    DegreeTooLarge { requested: usize, max: usize },

    #[error("germ radius violated: |g(0)| = {value} is not inside radius {radius}")]
    GermRadius { value: f64, radius: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("range mismatch: {0}")]
    RangeMismatch(String),

    #[error("diagnostic caps exceeded: {}", violations.join("; "))]
    CapExceeded {
        violations: Vec<String>,
        candidate: Box<crate::peaks::PeakCandidate>,
    },
}

impl Error {
    /// Errors that stem from rejected input rather than from a computation.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::CapExceeded { .. })
    }
}
