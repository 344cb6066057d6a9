//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is not connected")]
    NotConnected,

    #[error("vertex {vertex} has degree {degree}; every vertex must have degree >= 2")]
    DegreeOneVertex { vertex: usize, degree: usize },

    #[error("bad geometry: {0}")]
    BadGeometry(String),

    #[error("dangling reference: {0}")]
    DanglingReference(String),

    #[error("malformed graph spec: {0}")]
    MalformedSpec(String),

    #[error("unknown builtin family `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters for builtin family `{family}`: {reason}")]
    BadParams { family: String, reason: String },

    #[error("oriented edge {from} does not continue into oriented edge {to}")]
    NotAdjacent { from: usize, to: usize },

    #[error("transition from oriented edge {0} into its own reversal is a backtrack")]
    Backtrack(usize),

    #[error(
        "closed-walk turning is not an integer multiple of 2\u{3c0} \
         (residual {residual:e}, tolerance {tolerance:e})"
    )]
    WindingNotIntegral { residual: f64, tolerance: f64 },

    #[error(
        "trace of S^{power} failed integrality certification \
         (residual {residual:e}, tolerance {tolerance:e})"
    )]
    NonIntegralTrace {
        power: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("characteristic-polynomial coefficient of z^{degree} is not an integer")]
    NonIntegralCoefficient { degree: usize },

    #[error("count failed its integrality certificate: {0}")]
    NonIntegerCount(String),

    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,

    #[error("series constant term is unsuitable: {0}")]
    BadConstantTerm(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("parity violation at degree {degree}: coefficient sums of the two determinants must be even")]
    ParityViolation { degree: usize },

    #[error("graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
