use thiserror::Error;

use super::ids::{EdgeId, FaceId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("malformed scheme document: {0}")]
    Malformed(String),

    #[error("duplicate {what} id {id}")]
    DuplicateId { what: &'static str, id: String },

    #[error("{context} refers to unknown {what} {id}")]
    UnknownReference {
        what: &'static str,
        id: String,
        context: String,
    },

    #[error("edge {0} is a loop")]
    Loop(EdgeId),

    #[error("rotation at vertex {vertex} is inconsistent: {reason}")]
    InvalidRotation { vertex: VertexId, reason: String },

    #[error("graph is disconnected: vertex {0} cannot be reached from the source")]
    Disconnected(VertexId),

    #[error("directed cycle through {}", join(.0))]
    DirectedCycle(Vec<VertexId>),

    #[error("source and sink coincide")]
    SourceEqualsSink,

    #[error("vertex {0} is not reachable from the source by a directed path")]
    Unreachable(VertexId),

    #[error("the sink is not reachable from vertex {0} by a directed path")]
    NotCoreachable(VertexId),

    #[error("rotation system is not planar: V - E + F = {vertices} - {edges} + {faces} != 2")]
    NotPlanar {
        vertices: usize,
        edges: usize,
        faces: usize,
    },

    #[error("no traced face has boundary {} starting at the source", join(.declared))]
    ExteriorMismatch { declared: Vec<EdgeId> },

    #[error("exterior boundary does not run from the source to the sink")]
    ExteriorEndpoints,

    #[error("face boundary {} is not one directed path followed by one reversed directed path", join(.0))]
    BadFaceBoundary(Vec<EdgeId>),

    #[error("face boundary {} starts and ends at the same vertex", join(.0))]
    DegenerateFace(Vec<EdgeId>),

    #[error("declared face {id}: {reason}")]
    DeclaredFace { id: FaceId, reason: String },
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl SchemeError {
    /// Stable machine-readable tag used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            SchemeError::Malformed(_) => "malformed-document",
            SchemeError::DuplicateId { .. } => "duplicate-id",
            SchemeError::UnknownReference { .. } => "unknown-reference",
            SchemeError::Loop(_) => "loop",
            SchemeError::InvalidRotation { .. } => "invalid-rotation",
            SchemeError::Disconnected(_) => "disconnected",
            SchemeError::DirectedCycle(_) => "directed-cycle",
            SchemeError::SourceEqualsSink => "source-equals-sink",
            SchemeError::Unreachable(_) => "unreachable-from-source",
            SchemeError::NotCoreachable(_) => "sink-unreachable",
            SchemeError::NotPlanar { .. } => "not-planar",
            SchemeError::ExteriorMismatch { .. } => "exterior-mismatch",
            SchemeError::ExteriorEndpoints => "exterior-endpoints",
            SchemeError::BadFaceBoundary(_) => "bad-face-boundary",
            SchemeError::DegenerateFace(_) => "degenerate-face",
            SchemeError::DeclaredFace { .. } => "declared-face",
        }
    }

    /// True for errors in the document itself rather than in the graph it describes.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            SchemeError::Malformed(_)
                | SchemeError::DuplicateId { .. }
                | SchemeError::UnknownReference { .. }
        )
    }
}
