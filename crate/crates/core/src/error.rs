use thiserror::Error;

use crate::domain::VertexLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid direction: zero-length vector")]
    InvalidDirection,

    #[error("syntax error in {what}: {message}")]
    Syntax { what: &'static str, message: String },

    #[error("boundary {boundary} has {count} vertices; at least 3 are required")]
    TooFewVertices { boundary: usize, count: usize },

    #[error("boundary {boundary} repeats vertex {vertex} consecutively")]
    DuplicateVertex { boundary: usize, vertex: usize },

    #[error("domain has {0} outer boundaries; at most one is allowed")]
    MultipleOuter(usize),

    #[error("domain validation failed: {0}")]
    Validation(String),

    #[error("orientation corruption at {label}: {message}")]
    OrientationCorruption { label: VertexLabel, message: String },

    #[error("direction lies outside the interior sector at {0}")]
    OutsideSector(VertexLabel),

    #[error("invalid label {0}")]
    InvalidLabel(String),

    #[error("visibility graph is disconnected: {unreached} vertices unreachable from {source_label}")]
    Disconnected { source_label: VertexLabel, unreached: usize },

    #[error("{label} is the tree source")]
    SourceVertex { label: VertexLabel },

    #[error("{child} is not a child of the tree source {source_label}")]
    NotAChild { child: VertexLabel, source_label: VertexLabel },

    #[error("epsilon must be a positive finite number, got {0}")]
    InvalidEpsilon(f64),

    #[error("member set is not a cyclic interval")]
    NotAnInterval,

    #[error("routing table corruption at {owner}: {message}")]
    TableCorruption { owner: VertexLabel, message: String },

    #[error("no table entry at {owner} covers destination {target}")]
    UnknownDestination { owner: VertexLabel, target: VertexLabel },

    #[error("target {0} equals the current vertex")]
    TargetIsOwner(VertexLabel),

    #[error("routing from {from} to {to} did not terminate within {budget} steps")]
    NonTermination { from: VertexLabel, to: VertexLabel, budget: usize },

    #[error("tables header mismatch: {0}")]
    HeaderMismatch(String),

    #[error("generator failed: {0}")]
    Generator(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
