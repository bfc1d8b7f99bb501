use std::fmt;

use crate::domain::VertexLabel;

/// Non-fatal general-position diagnostics collected during preprocessing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// Two in-paths to `vertex` from `source` have (nearly) equal length.
    NearTie { source: VertexLabel, vertex: VertexLabel, parents: (VertexLabel, VertexLabel) },
    /// Two children of `owner` in one cone are equally close.
    ViaTie { owner: VertexLabel, cone: usize, candidates: (VertexLabel, VertexLabel) },
    /// The segment between `a` and `b` passes through another vertex.
    Grazing { a: VertexLabel, b: VertexLabel },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NearTie { source, vertex, parents } => write!(
                f,
                "shortest path {source} -> {vertex} is not unique (via {} or {})",
                parents.0, parents.1
            ),
            Warning::ViaTie { owner, cone, candidates } => write!(
                f,
                "cone {cone} at {owner} has equidistant nearest vertices {} and {}",
                candidates.0, candidates.1
            ),
            Warning::Grazing { a, b } => write!(f, "segment {a} - {b} passes through another vertex"),
        }
    }
}
