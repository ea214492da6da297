use thiserror::Error;

use crate::measure::AxiomReport;

/// Failures raised by the event, measure and conditional operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("events belong to different sample spaces")]
    SpaceMismatch,
    #[error("event family is empty")]
    EmptyFamily,
    #[error("size limit exceeded: {what} needs {requested}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("events {first} and {second} are not disjoint")]
    NotDisjoint { first: usize, second: usize },
    #[error("conditioning event has probability zero")]
    ConditionOnNull,
    #[error("prefix intersection of the first {length} events has probability zero")]
    PrefixNull { length: usize },
    #[error("events do not form a partition of the sample space")]
    NotAPartition,
    #[error("evidence has probability zero")]
    EvidenceNull,
    #[error("block {index} has probability zero")]
    PriorNull { index: usize },
    #[error("index {index} out of range for {len} blocks")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: {left} priors vs {right} likelihoods")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid prior: {0}")]
    InvalidPrior(String),
    #[error("invalid likelihood: {0}")]
    InvalidLikelihood(String),
    #[error("invalid sample space: {0}")]
    InvalidSpace(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid measure:\n{0}")]
    InvalidMeasure(Box<AxiomReport>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
