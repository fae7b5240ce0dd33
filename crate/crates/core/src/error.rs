use thiserror::Error;

use crate::graph::{Edge, PropertyViolation};
use crate::triangulation::TriangulationViolation;

/// Errors raised when constructing or transforming graphs and triangulations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {0} is outside the supported range 1..=64")]
    VertexCount(usize),

    #[error("vertex {vertex} is not a label of a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {0} is not a pair of distinct vertices")]
    SelfLoop(usize),

    #[error("edge {0} is not present in the graph")]
    MissingEdge(Edge),

    #[error("graph is not persistent: {0}")]
    NotPersistent(PropertyViolation),

    #[error("triangulation is invalid: {0}")]
    InvalidTriangulation(TriangulationViolation),

    #[error("flip precondition failed: simplex {0} is not in the triangulation")]
    FlipPrecondition(crate::triangulation::Simplex3),

    #[error("n = {n} exceeds the cap of {cap} for {what}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
