//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: input {index} has length {found}, expected {expected}")]
    Dimension {
        op: &'static str,
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(
        "relation `{relation}` re-appears with arity {found} at line {line}; first declared with arity {expected}"
    )]
    ArityConflict {
        relation: String,
        expected: usize,
        found: usize,
        line: usize,
    },

    #[error("name `{0}` contains the reserved infix \"__\"")]
    ReservedName(String),

    #[error("malformed reified group for aux entity `{aux}`: {message}")]
    MalformedGroup { aux: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("position {position} out of range: model supports positions 0..{max_arity}")]
    Position { position: usize, max_arity: usize },

    #[error("fact arity {arity} not supported: model expects arity {expected}")]
    Arity { arity: usize, expected: String },

    #[error("cannot corrupt entities: vocabulary has {0} entities, need at least 2")]
    CannotCorrupt(usize),

    #[error("degenerate loss: a positive example carries no negative samples")]
    DegenerateLoss,

    #[error("training diverged at epoch {epoch}: loss is not finite")]
    Diverged { epoch: usize },

    #[error("enumeration bound exceeded: {count} candidate tuples, bound is {bound}")]
    EnumerationBound { count: u128, bound: u64 },

    #[error("empty test set: nothing to evaluate")]
    EmptyTestSet,

    #[error("vocabulary mismatch: checkpoint hash {checkpoint:016x}, dataset hash {dataset:016x}")]
    VocabMismatch { checkpoint: u64, dataset: u64 },

    #[error("name `{0}` is not present in the checkpoint vocabulary")]
    UnknownName(String),

    #[error("checkpoint format error: {0}")]
    Checkpoint(String),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
