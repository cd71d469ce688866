//! Error type shared by all modules.
//!
//! Each variant carries a stable upper-case code as the first word of its
//! message so that callers (and the CLI) can name the violated invariant.

use thiserror::Error;

/// Errors produced by PMF validation, measure evaluation, and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("EMPTY: a probability mass function needs at least one letter")]
    Empty,

    #[error("NEGATIVE_ENTRY: entry {value} at index {index} is negative")]
    NegativeEntry { index: usize, value: f64 },

    #[error("NON_FINITE_ENTRY: entry at index {index} is not a finite number")]
    NonFiniteEntry { index: usize },

    #[error("SUM_NOT_ONE: entries sum to {sum}, expected 1 within 1e-9")]
    SumNotOne { sum: f64 },

    #[error("SIZE_MISMATCH: alphabet sizes differ ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("SIGMA_OUT_OF_RANGE: sigma {sigma} must lie in [0, 0.5)")]
    SigmaOutOfRange { sigma: f64 },

    #[error("NONPOSITIVE_K: power parameter k = {k} must be > 0")]
    NonpositiveK { k: f64 },

    #[error("NONPOSITIVE_SCALE: scale factor {scale} must be > 0")]
    NonpositiveScale { scale: f64 },

    #[error("ZERO_PROBABILITY_LETTER: letter {index} has probability 0, its literal codeword length is undefined")]
    ZeroProbabilityLetter { index: usize },

    #[error("EPSILON_OUT_OF_RANGE: epsilon {epsilon} must satisfy 0 < epsilon < {max}")]
    EpsilonOutOfRange { epsilon: f64, max: f64 },

    #[error("UNSUPPORTED_KIND: measure '{kind}' is not allowed in this slot")]
    UnsupportedKind { kind: String },

    #[error("MISSING_JOINT: conditional entropy needs a joint distribution")]
    MissingJoint,

    #[error("NO_CROSSING: '{measure}' never exceeds threshold {threshold} on (0, 0.5]")]
    NoCrossing { measure: String, threshold: f64 },

    #[error("UNKNOWN_MEASURE: '{name}' is not a recognised measure name")]
    UnknownMeasure { name: String },

    #[error("BAD_TABLE: {0}")]
    BadTable(String),

    #[error("PARSE: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
