use thiserror::Error;

/// Errors produced by graph construction and engine queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node not found: {0}")]
    NodeNotFound(String),
    #[error("loop edge at node {0}")]
    LoopEdge(String),
    #[error("graph has {0} nodes, at most 64 are supported")]
    TooManyNodes(usize),
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("graph is not in the required class: {0}")]
    ClassViolation(String),
    #[error("size limit exceeded: {what} has {actual} nodes, bound is {bound}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        bound: usize,
    },
    #[error("unsatisfiable generator spec: {0}")]
    UnsatisfiableSpec(String),
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
