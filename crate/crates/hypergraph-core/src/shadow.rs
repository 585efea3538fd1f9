use std::fmt;

use crate::error::HypergraphError;
use crate::graph::{Hyperedge, Hypergraph, VertexId};
use crate::simplices::enumerate_simplices;

/// A vertex of the shadow hypergraph: an original vertex `base` tagged with
/// the flavor of the edge that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShadowVertex {
    pub flavor: VertexId,
    pub base: VertexId,
}

impl fmt::Display for ShadowVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.flavor, self.base)
    }
}

/// The (k-1)-uniform shadow of a k-uniform hypergraph.
///
/// Every edge contributes exactly one shadow edge: drop the edge's minimum
/// vertex and tag the survivors with it as flavor. The map back to source
/// edges is a bijection, so the shadow has the same edge count.
#[derive(Clone, Debug)]
pub struct ShadowHypergraph {
    source_k: usize,
    n: VertexId,
    edges: Vec<Vec<ShadowVertex>>,
    origins: Vec<Hyperedge>,
}

impl ShadowHypergraph {
    /// Arity of the shadow edges (one less than the source).
    pub fn arity(&self) -> usize {
        self.source_k - 1
    }

    pub fn n(&self) -> VertexId {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Shadow edges, each sorted; index-aligned with `origins`.
    pub fn edges(&self) -> &[Vec<ShadowVertex>] {
        &self.edges
    }

    pub fn origins(&self) -> &[Hyperedge] {
        &self.origins
    }

    pub fn origin_of(&self, idx: usize) -> &Hyperedge {
        &self.origins[idx]
    }

    /// Integer id of a shadow vertex, for hashing and for re-use of the plain
    /// hypergraph machinery. Ids live in 1..=n*n.
    pub fn encode_vertex(&self, sv: ShadowVertex) -> VertexId {
        encode_shadow_vertex(sv, self.n)
    }

    pub fn decode_vertex(&self, id: VertexId) -> ShadowVertex {
        decode_shadow_vertex(id, self.n)
    }

    /// The shadow as an ordinary hypergraph over encoded vertex ids.
    pub fn to_encoded_hypergraph(&self) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|se| {
                Hyperedge::new(se.iter().map(|&sv| self.encode_vertex(sv)).collect())
                    .expect("encoded shadow vertices are distinct")
            })
            .collect();
        Hypergraph::new(self.arity(), self.n * self.n, edges)
            .expect("shadow edges are valid and duplicate-free")
    }
}

pub fn encode_shadow_vertex(sv: ShadowVertex, n: VertexId) -> VertexId {
    (sv.flavor - 1) * n + sv.base
}

pub fn decode_shadow_vertex(id: VertexId, n: VertexId) -> ShadowVertex {
    ShadowVertex {
        flavor: (id - 1) / n + 1,
        base: (id - 1) % n + 1,
    }
}

/// Builds the shadow hypergraph. Requires k >= 3; encoded vertex ids must fit
/// in the id type, which bounds n by 65535.
pub fn shadow_hypergraph(h: &Hypergraph) -> Result<ShadowHypergraph, HypergraphError> {
    if h.k() < 3 {
        return Err(HypergraphError::UnsupportedArity { k: h.k(), need: 3 });
    }
    assert!(
        (h.n() as u64) * (h.n() as u64) <= u32::MAX as u64,
        "encoded shadow vertex ids overflow at n = {}",
        h.n()
    );
    let mut edges = Vec::with_capacity(h.m());
    let mut origins = Vec::with_capacity(h.m());
    for e in h.edges() {
        let flavor = e.min_vertex();
        let se: Vec<ShadowVertex> = e
            .vertices()
            .iter()
            .skip(1)
            .map(|&base| ShadowVertex { flavor, base })
            .collect();
        edges.push(se);
        origins.push(e.clone());
    }
    Ok(ShadowHypergraph {
        source_k: h.k(),
        n: h.n(),
        edges,
        origins,
    })
}

/// Counts flavored (k-1)-simplices of the shadow whose base vertices, plus
/// the flavor, span a simplex of `h`. This equals the simplex count of `h`:
/// a simplex maps to the flavored clique at its minimum vertex, and the
/// missing-base filter removes shadow cliques with no closing edge.
pub fn shadow_simplex_census(h: &Hypergraph) -> Result<u64, HypergraphError> {
    let sh = shadow_hypergraph(h)?;
    let encoded = sh.to_encoded_hypergraph();
    let mut count = 0u64;
    for x in enumerate_simplices(&encoded) {
        let decoded: Vec<ShadowVertex> = x.iter().map(|&id| sh.decode_vertex(id)).collect();
        let flavor = decoded[0].flavor;
        if decoded.iter().any(|sv| sv.flavor != flavor) {
            continue;
        }
        let bases: Vec<VertexId> = decoded.iter().map(|sv| sv.base).collect();
        if h.contains_edge_verts(&bases) {
            count += 1;
        }
    }
    Ok(count)
}
