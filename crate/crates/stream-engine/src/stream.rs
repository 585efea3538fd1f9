use std::path::Path;

use hypergraph_core::{Hyperedge, Hypergraph, HypergraphError, VertexId};

use crate::error::StreamError;
use crate::format::{read_edge_list_file, DedupPolicy};
use crate::meter::SpaceMeter;

/// A fixed arrival order over the edges of one hypergraph. Rewinding is free;
/// every pass yields the identical sequence, which `pass` re-verifies against
/// a checksum taken at construction.
#[derive(Clone, Debug)]
pub struct EdgeStream {
    k: usize,
    n: VertexId,
    edges: Vec<Hyperedge>,
    checksum: u64,
}

impl EdgeStream {
    pub fn from_edges(k: usize, n: VertexId, edges: Vec<Hyperedge>) -> Result<Self, StreamError> {
        for e in &edges {
            if e.arity() != k {
                return Err(HypergraphError::ArityMismatch {
                    edge: e.clone(),
                    expected: k,
                    got: e.arity(),
                }
                .into());
            }
            if e.max_vertex() > n {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: e.max_vertex(),
                    n,
                }
                .into());
            }
        }
        let checksum = sequence_checksum(&edges);
        Ok(Self {
            k,
            n,
            edges,
            checksum,
        })
    }

    /// Streams the edges in the hypergraph's insertion order.
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        Self::from_edges(h.k(), h.n(), h.edges().to_vec())
            .expect("hypergraph edges are already validated")
    }

    pub fn from_file(path: &Path, policy: DedupPolicy) -> Result<Self, StreamError> {
        let parsed = read_edge_list_file(path, policy)?;
        Self::from_edges(parsed.k, parsed.n, parsed.edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> VertexId {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Materializes the underlying hypergraph, e.g. for exact counting.
    pub fn to_hypergraph(&self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::new(self.k, self.n, self.edges.clone())
    }

    /// One rewind-and-scan. Counts a pass on the meter and re-checks that the
    /// sequence about to be yielded is the one captured at construction.
    pub fn pass<'a>(&'a self, meter: &mut SpaceMeter) -> std::slice::Iter<'a, Hyperedge> {
        meter.begin_pass();
        assert_eq!(
            sequence_checksum(&self.edges),
            self.checksum,
            "edge sequence changed between passes"
        );
        self.edges.iter()
    }
}

pub type PassFn<'a> = Box<dyn FnMut(&Hyperedge) -> Result<(), String> + 'a>;

/// Runs the callbacks as consecutive passes; the first callback error aborts
/// the run with its 1-based pass index.
pub fn run_passes(
    stream: &EdgeStream,
    meter: &mut SpaceMeter,
    passes: Vec<PassFn<'_>>,
) -> Result<(), StreamError> {
    for (i, mut f) in passes.into_iter().enumerate() {
        for e in stream.pass(meter) {
            f(e).map_err(|reason| StreamError::PassAborted { pass: i + 1, reason })?;
        }
    }
    Ok(())
}

/// FNV-1a over arity-prefixed vertex lists.
fn sequence_checksum(edges: &[Hyperedge]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    };
    for e in edges {
        eat(e.arity() as u64);
        for &v in e.vertices() {
            eat(v as u64);
        }
    }
    h
}
