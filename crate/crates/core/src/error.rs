use std::path::PathBuf;

use thiserror::Error;

use crate::types::ArmId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Counters of an evaluation that stopped before reaching its target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialReplay {
    pub total_payoff: f64,
    pub retained: usize,
    pub consumed: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("no candidate arms")]
    NoCandidateArms,

    #[error("context dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid event: {0}")]
    InvalidEvent(String),

    #[error("matrix is not positive definite (arm {arm})")]
    SingularMatrix { arm: ArmId },

    #[error("ground truth defined for fixed policies only")]
    NotFixedPolicy,

    #[error("logging distribution not normalized: probabilities over candidate arms sum to {sum}")]
    LoggerNotNormalized { sum: f64 },

    #[error("arm {arm} has no payoff model entry")]
    UnknownArm { arm: ArmId },

    #[error("no candidate arms scheduled at trial {trial}")]
    EmptySchedule { trial: usize },

    #[error(
        "event {index} has non-uniform propensity {propensity} with {arms} candidate arms; \
         use the rejection-sampling evaluator for non-uniform logs"
    )]
    NonUniformPropensity { index: usize, propensity: f64, arms: usize },

    #[error("propensity bound violated at event {index}: propensity {propensity}, p_min {p_min}")]
    PropensityBound { index: usize, propensity: f64, p_min: f64 },

    #[error(
        "stream exhausted after {} events with {} of {target} valid events",
        partial.consumed,
        partial.retained
    )]
    StreamExhausted { target: usize, partial: PartialReplay },

    #[error("no valid events; estimate undefined")]
    NoValidEvents,

    #[error("all {runs} runs were excluded (no valid events)")]
    AllRunsExcluded { runs: usize },

    #[error("L too small for meaningful bound: gamma1 = {gamma1} >= 1")]
    BoundUndefined { gamma1: f64 },

    #[error("{path}:{line}: {reason}")]
    Malformed { path: PathBuf, line: usize, reason: String },

    #[error("unsupported log format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },

    #[error("world config: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
