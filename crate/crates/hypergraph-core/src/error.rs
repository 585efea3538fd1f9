use thiserror::Error;

use crate::graph::{Hyperedge, VertexId};

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),

    #[error("edge {edge} has {got} vertices, expected arity {expected}")]
    ArityMismatch {
        edge: Hyperedge,
        expected: usize,
        got: usize,
    },

    #[error("vertex ids must be positive")]
    ZeroVertex,

    #[error("repeated vertex {0} within one edge")]
    RepeatedVertex(VertexId),

    #[error("vertex {vertex} exceeds declared vertex count {n}")]
    VertexOutOfRange { vertex: VertexId, n: VertexId },

    #[error("duplicate edge {0}")]
    DuplicateEdge(Hyperedge),

    #[error("operation requires arity >= {need}, hypergraph has k = {k}")]
    UnsupportedArity { k: usize, need: usize },

    #[error("instance has {active} non-isolated vertices, exceeding the cap of {cap}")]
    VertexCapExceeded { active: usize, cap: usize },
}
