use hypergraph_core::HypergraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("need n >= k, got n = {n}, k = {k}")]
    TooFewVertices { k: usize, n: u32 },

    #[error("requested {m} edges but only {max} distinct edges exist")]
    TooManyEdges { m: usize, max: u64 },

    #[error("cannot plant: {reason}")]
    InfeasiblePlant { reason: String },

    #[error("index {given:?} outside the {k}-fold cube over [{n}]")]
    IndexOutOfRange { given: Vec<u32>, k: usize, n: u32 },

    #[error(transparent)]
    Graph(#[from] HypergraphError),
}
