use crate::channel::RegimeLabel;

/// Errors raised by channel construction, region generation and the
/// polyhedral routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a cyclic channel needs at least 2 users, got {0}")]
    TooFewUsers(usize),

    #[error("expected {expected} entries per parameter list, got {snr} SNR and {inr} INR values")]
    LengthMismatch {
        expected: usize,
        snr: usize,
        inr: usize,
    },

    #[error("SNR of user {user} must be positive and finite, got {value}")]
    NonPositiveSnr { user: usize, value: f64 },

    #[error("INR of user {user} must be nonnegative and finite, got {value}")]
    NegativeInr { user: usize, value: f64 },

    #[error("private INR of user {user} must lie in [0, {inr}], got {value}")]
    InvalidSplit { user: usize, value: f64, inr: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("user index {index} out of range for K = {k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("operation requires the {required} regime, channel is {actual:?}")]
    WrongRegime {
        required: &'static str,
        actual: RegimeLabel,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("family `{0}` has no counterpart in the reference system")]
    UnmatchedFamily(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("system is infeasible")]
    Infeasible,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
