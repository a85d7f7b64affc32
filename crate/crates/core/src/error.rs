use thiserror::Error;

/// Errors produced by tree construction, counting, perturbation and survey
/// operations. Every variant names the offending datum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} edges for {n} vertices, got {actual}")]
    EdgeCountMismatch {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("not a connected tree: vertex {unreachable} is unreachable")]
    NotConnected { unreachable: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("order {n} exceeds the cap {max} for this operation")]
    TooLarge { n: usize, max: usize },
    #[error("invalid parameters: {reason}")]
    InvalidParams { reason: String },
    #[error("spine index {i} out of range 1..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("vertex {v} is not a pendant vertex")]
    NotPendant { v: usize },
    #[error("pendant {y} is already adjacent to destination {w}")]
    AdjacentAlready { y: usize, w: usize },
    #[error("source and destination coincide at vertex {v}")]
    SameVertex { v: usize },
    #[error("invalid hanging path: {reason}")]
    InvalidHangingPath { reason: String },
    #[error("bad destination {z}: {reason}")]
    BadDestination { z: usize, reason: String },
    #[error("subtree core after leaf move is {got:?}, expected {{{expected}}}")]
    CoreMismatch { expected: usize, got: Vec<usize> },
    #[error("reconstruction check failed: {check}")]
    ReconstructionMismatch { check: String },
    #[error("bad edge-list input at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
