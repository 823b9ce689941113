use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid step character {0:?} (expected 'N' or 'E')")]
    InvalidStep(char),
    #[error("empty lattice path")]
    EmptyPath,
    #[error("path endpoints differ: ({0}, {1}) vs ({2}, {3})")]
    EndpointMismatch(usize, usize, usize, usize),
    #[error("point ({x}, {y}) lies strictly below the reference path")]
    PointBelowPath { x: usize, y: usize },
    #[error("path {0} is not weakly above the reference path")]
    NotWeaklyAbove(String),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("bracket vectors belong to different reference paths")]
    ContextMismatch,
    #[error("not a valid bracket vector for nu = {nu}: {reason}")]
    InvalidVector { nu: String, reason: String },
    #[error("{what} = {value} exceeds the enumeration bound {limit} (use force to override)")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("reference path {0} is not of the form E(NE)^(k-1)")]
    NotEastDyck(String),
    #[error("hash map undefined: reference path {0} is too short")]
    HashExhausted(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation {0} contains the pattern 312")]
    Not312Avoiding(String),
    #[error("unknown pattern {0:?}")]
    UnknownPattern(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("series truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series constant term must be zero")]
    NonzeroConstantTerm,
    #[error("order isomorphism check failed: {0}")]
    IsomorphismFailure(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
