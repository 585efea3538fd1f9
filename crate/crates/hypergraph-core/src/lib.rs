//! Core types and exact reference computations for k-uniform hypergraphs.
//!
//! A hypergraph here is always k-uniform with 1-based vertex ids. The central
//! exact computation is the simplex census: a k-simplex is a set of k+1
//! vertices whose k+1 possible hyperedges are all present. Everything in this
//! crate is deterministic and intended for instances small enough to hold in
//! memory; the streaming estimators live elsewhere and are checked against
//! these reference routines.
//!
//! ```
//! use hypergraph_core::{Hyperedge, Hypergraph, count_simplices_exact};
//!
//! // the four faces of a single 3-simplex
//! let edges = vec![
//!     Hyperedge::new(vec![1, 2, 3]).unwrap(),
//!     Hyperedge::new(vec![1, 2, 4]).unwrap(),
//!     Hyperedge::new(vec![1, 3, 4]).unwrap(),
//!     Hyperedge::new(vec![2, 3, 4]).unwrap(),
//! ];
//! let h = Hypergraph::new(3, 4, edges).unwrap();
//! assert_eq!(count_simplices_exact(&h).t_k, 1);
//! ```

mod arboricity;
mod error;
mod graph;
mod order;
mod shadow;
mod simplices;
pub mod util;
pub mod verify;

pub use arboricity::{hyperarboricity_exact, sum_min_degrees, DEFAULT_ARBORICITY_CAP};
pub use error::HypergraphError;
pub use graph::{Hyperedge, Hypergraph, VertexId};
pub use order::{e_relative_order, precedes, simplex_label, sum_prefix_codegs, RelativeOrdering};
pub use shadow::{shadow_hypergraph, shadow_simplex_census, ShadowHypergraph, ShadowVertex};
pub use simplices::{
    count_simplices_exact, count_simplices_edge_driven, count_simplices_enumerated,
    enumerate_simplices, hyperwedges_of, Hyperwedge, SimplexStats,
};
