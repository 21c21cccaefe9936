use thiserror::Error;

use crate::tail::Verdict;

/// Errors produced by analysis operations. All of these indicate misuse of
/// an operation or invalid inputs, never an internal failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input sequence is empty")]
    EmptyInput,
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("fuzziness parameter r must be non-negative, got {r}")]
    NegativeR { r: f64 },
    #[error("epsilon must be positive, got {eps}")]
    NonPositiveEps { eps: f64 },
    #[error("n = {n} exceeds the evidence horizon {horizon}")]
    OutOfEvidence { n: usize, horizon: usize },
    #[error("sequences must have equal length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("pointwise ordering lower <= middle <= upper violated at position {index}")]
    OrderingViolated { index: usize },
    #[error("candidate {candidate} rejected at r = {r} (verdict {verdict}); witness extraction requires an accepted candidate")]
    RejectedCandidate {
        candidate: f64,
        r: f64,
        verdict: Verdict,
    },
    #[error("index set is not statistically dense (estimated density {estimate})")]
    NotDense { estimate: f64 },
    #[error("|value| at position {index} is {value}, not below the stated bound m = {m}; the mean and deviation bounds only apply to sequences bounded by m")]
    NotBounded { m: f64, index: usize, value: f64 },
    #[error("scale factor k must be nonzero")]
    ZeroScale,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
