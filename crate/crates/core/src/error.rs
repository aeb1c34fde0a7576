//! Crate-wide error types.

use thiserror::Error;

/// Structural errors: malformed inputs that are rejected before any
/// topological question is asked. Distinct from embedding violations,
/// which are reported in a [`crate::graph::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("vertex `{0}` has coordinates outside [0,1)")]
    CoordinateRange(String),
    #[error("edge `{0}` has a polyline with fewer than 2 points")]
    PolylineTooShort(String),
    #[error("edge `{edge}`: first polyline point does not equal the coordinates of `{vertex}`")]
    StartMismatch { edge: String, vertex: String },
    #[error("edge `{edge}`: last polyline point does not equal the coordinates of `{vertex}` plus an integer vector")]
    EndMismatch { edge: String, vertex: String },
    #[error("edge `{0}` has two consecutive identical polyline points")]
    RepeatedPoint(String),
    #[error("vertices `{0}` and `{1}` occupy the same point of the torus")]
    CoincidentVertices(String, String),
    #[error("step {step} of the cycle does not continue from the current vertex")]
    NotACycle { step: usize },
    #[error("cycle revisits vertex `{0}`")]
    CycleRevisitsVertex(String),
    #[error("edge set is not a spanning tree of the graph")]
    NotASpanningTree,
    #[error("nonzero non-primitive homology class ({0}, {1}) has no knot classification")]
    NonPrimitiveClass(i64, i64),
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("graph failed embedding validation; classify requires a validated embedding")]
    NotAnEmbedding,
}

/// Signal raised when an exhaustive scan hits its configured cap.
/// Scans that end this way never silently truncate: callers must surface
/// an indeterminate outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("scan aborted: cap of {cap} exceeded")]
pub struct ScanIncomplete {
    pub cap: usize,
}

/// Signal raised when spanning-tree enumeration hits its configured cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("spanning tree enumeration aborted: cap of {cap} exceeded")]
pub struct TreeCapExceeded {
    pub cap: usize,
}
