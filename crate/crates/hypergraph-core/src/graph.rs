use std::collections::HashMap;
use std::fmt;

use crate::error::HypergraphError;

/// 1-based vertex identifier.
pub type VertexId = u32;

/// A k-uniform hyperedge, stored as a strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperedge {
    verts: Vec<VertexId>,
}

impl Hyperedge {
    /// Builds an edge from an unordered vertex list. Rejects zero ids and
    /// repeated vertices; the list is sorted into canonical form.
    pub fn new(mut verts: Vec<VertexId>) -> Result<Self, HypergraphError> {
        if verts.iter().any(|&v| v == 0) {
            return Err(HypergraphError::ZeroVertex);
        }
        verts.sort_unstable();
        for w in verts.windows(2) {
            if w[0] == w[1] {
                return Err(HypergraphError::RepeatedVertex(w[0]));
            }
        }
        Ok(Hyperedge { verts })
    }

    pub fn arity(&self) -> usize {
        self.verts.len()
    }

    /// Vertices in strictly increasing order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    /// True when every vertex of `s` (sorted) lies in this edge.
    pub fn contains_all(&self, s: &[VertexId]) -> bool {
        let mut it = self.verts.iter();
        s.iter().all(|v| it.any(|u| u == v))
    }

    pub fn min_vertex(&self) -> VertexId {
        self.verts[0]
    }

    pub fn max_vertex(&self) -> VertexId {
        *self.verts.last().expect("edges are never empty")
    }

    /// The edge with `v` removed, as a sorted vertex list.
    pub fn without(&self, v: VertexId) -> Vec<VertexId> {
        self.verts.iter().copied().filter(|&u| u != v).collect()
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.verts
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A k-uniform hypergraph over vertices 1..=n with a duplicate-free edge set.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    k: usize,
    n: VertexId,
    edges: Vec<Hyperedge>,
    position: HashMap<Hyperedge, usize>,
    incidence: HashMap<VertexId, Vec<usize>>,
}

impl Hypergraph {
    /// Strict constructor: any duplicate edge is an error.
    pub fn new(
        k: usize,
        n: VertexId,
        edges: Vec<Hyperedge>,
    ) -> Result<Self, HypergraphError> {
        Self::build(k, n, edges, false).map(|(h, _)| h)
    }

    /// Lenient constructor for external input: duplicates are dropped and
    /// counted instead of rejected.
    pub fn new_dedup(
        k: usize,
        n: VertexId,
        edges: Vec<Hyperedge>,
    ) -> Result<(Self, usize), HypergraphError> {
        Self::build(k, n, edges, true)
    }

    fn build(
        k: usize,
        n: VertexId,
        edges: Vec<Hyperedge>,
        dedup: bool,
    ) -> Result<(Self, usize), HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::ArityTooSmall(k));
        }
        let mut h = Hypergraph {
            k,
            n,
            edges: Vec::with_capacity(edges.len()),
            position: HashMap::with_capacity(edges.len()),
            incidence: HashMap::new(),
        };
        let mut dropped = 0;
        for e in edges {
            if e.arity() != k {
                return Err(HypergraphError::ArityMismatch {
                    got: e.arity(),
                    expected: k,
                    edge: e,
                });
            }
            if e.max_vertex() > n {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: e.max_vertex(),
                    n,
                });
            }
            if h.position.contains_key(&e) {
                if dedup {
                    dropped += 1;
                    continue;
                }
                return Err(HypergraphError::DuplicateEdge(e));
            }
            let idx = h.edges.len();
            for &v in e.vertices() {
                h.incidence.entry(v).or_default().push(idx);
            }
            h.position.insert(e.clone(), idx);
            h.edges.push(e);
        }
        Ok((h, dropped))
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

    pub fn contains_edge(&self, e: &Hyperedge) -> bool {
        self.position.contains_key(e)
    }

    /// Membership test from a sorted vertex slice, without allocating.
    pub fn contains_edge_verts(&self, verts: &[VertexId]) -> bool {
        // Cheap probe used by census inner loops: go through the shortest
        // incidence list instead of hashing a temporary edge.
        if verts.len() != self.k {
            return false;
        }
        let probe = match verts
            .iter()
            .min_by_key(|v| self.incidence.get(v).map_or(0, Vec::len))
        {
            Some(&v) => v,
            None => return false,
        };
        self.incident(probe)
            .iter()
            .any(|&i| self.edges[i].vertices() == verts)
    }

    pub fn edge_position(&self, e: &Hyperedge) -> Option<usize> {
        self.position.get(e).copied()
    }

    fn incident(&self, v: VertexId) -> &[usize] {
        self.incidence.get(&v).map_or(&[], Vec::as_slice)
    }

    /// Number of edges containing `v`.
    pub fn deg(&self, v: VertexId) -> u64 {
        self.incident(v).len() as u64
    }

    /// Vertices that occur in at least one edge, ascending.
    pub fn active_vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.incidence.keys().copied().collect();
        vs.sort_unstable();
        vs
    }

    /// Co-degree of a vertex set: the number of edges strictly containing `s`.
    ///
    /// `s` must be strictly increasing with fewer than k vertices; an empty
    /// set has co-degree m.
    pub fn codeg(&self, s: &[VertexId]) -> u64 {
        assert_valid_subset(s, self.k);
        if s.is_empty() {
            return self.m() as u64;
        }
        let probe = s
            .iter()
            .copied()
            .min_by_key(|v| self.incident(*v).len())
            .unwrap();
        self.incident(probe)
            .iter()
            .filter(|&&i| self.edges[i].contains_all(s))
            .count() as u64
    }

    /// Vertices outside `s` that share an edge with all of `s`.
    ///
    /// `s` must be strictly increasing and nonempty with fewer than k
    /// vertices. The result is sorted.
    pub fn neighborhood(&self, s: &[VertexId]) -> Vec<VertexId> {
        assert_valid_subset(s, self.k);
        assert!(!s.is_empty(), "neighborhood of the empty set is not defined");
        let probe = s
            .iter()
            .copied()
            .min_by_key(|v| self.incident(*v).len())
            .unwrap();
        let mut out: Vec<VertexId> = Vec::new();
        for &i in self.incident(probe) {
            let e = &self.edges[i];
            if e.contains_all(s) {
                out.extend(e.vertices().iter().filter(|v| !s.contains(v)));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Co-degree of `s` extended by one vertex: codeg(s + x).
    ///
    /// `s` must have at most k-2 vertices and must not contain `x`.
    pub fn reldeg(&self, s: &[VertexId], x: VertexId) -> u64 {
        assert!(
            s.len() + 1 < self.k,
            "relative degree needs |s| <= k-2, got |s| = {} with k = {}",
            s.len(),
            self.k
        );
        assert!(!s.contains(&x), "vertex {x} already in the set");
        let mut ext = Vec::with_capacity(s.len() + 1);
        ext.extend_from_slice(s);
        ext.push(x);
        ext.sort_unstable();
        self.codeg(&ext)
    }

    /// The (k-1)-uniform hypergraph induced around `u`: one edge `e \ u` for
    /// every edge `e` containing `u`. Vertex ids are preserved.
    pub fn neighborhood_hypergraph(&self, u: VertexId) -> Result<Hypergraph, HypergraphError> {
        if self.k < 3 {
            return Err(HypergraphError::UnsupportedArity { k: self.k, need: 3 });
        }
        let edges: Vec<Hyperedge> = self
            .incident(u)
            .iter()
            .map(|&i| Hyperedge { verts: self.edges[i].without(u) })
            .collect();
        // Distinct edges stay distinct after removing the shared vertex.
        Hypergraph::new(self.k - 1, self.n, edges)
    }
}

fn assert_valid_subset(s: &[VertexId], k: usize) {
    assert!(
        s.len() < k,
        "vertex set of size {} is not a proper subset of a {k}-edge",
        s.len()
    );
    assert!(
        s.windows(2).all(|w| w[0] < w[1]),
        "vertex set must be strictly increasing"
    );
    assert!(s.first().map_or(true, |&v| v > 0), "vertex ids are 1-based");
}
