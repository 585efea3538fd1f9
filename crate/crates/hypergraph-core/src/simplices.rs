use std::collections::HashMap;

use itertools::Itertools;

use crate::graph::{Hyperedge, Hypergraph, VertexId};
use crate::order::{simplex_label, spans_simplex};
use crate::util::binomial;

/// Above this many candidate vertex subsets the census switches from plain
/// subset enumeration to the edge-driven scan.
pub const SUBSET_ENUM_THRESHOLD: u64 = 20_000;

/// Exact census of the k-simplices of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexStats {
    /// Number of k-simplices.
    pub t_k: u64,
    /// Maximum number of simplices sharing one edge.
    pub delta_e: u64,
    /// Maximum number of simplices sharing one vertex.
    pub delta_v: u64,
    /// Per edge (aligned with `Hypergraph::edges`): simplices whose canonical
    /// label selects this edge. Sums to t_k.
    pub per_edge_labeled: Vec<u64>,
    /// Per edge: simplices containing this edge. Sums to (k+1) * t_k.
    pub per_edge_containing: Vec<u64>,
}

impl SimplexStats {
    pub fn labeled(&self, h: &Hypergraph, e: &Hyperedge) -> u64 {
        h.edge_position(e).map_or(0, |i| self.per_edge_labeled[i])
    }

    pub fn containing(&self, h: &Hypergraph, e: &Hyperedge) -> u64 {
        h.edge_position(e).map_or(0, |i| self.per_edge_containing[i])
    }
}

/// All simplices of `h`, each as a sorted (k+1)-vertex list, in sorted order.
pub fn enumerate_simplices(h: &Hypergraph) -> Vec<Vec<VertexId>> {
    let active = h.active_vertices();
    if binomial(active.len() as u64, h.k() as u64 + 1) <= SUBSET_ENUM_THRESHOLD {
        enumerate_by_subsets(h, &active)
    } else {
        enumerate_edge_driven(h)
    }
}

/// Exact simplex statistics. Dispatches between the two enumeration
/// strategies on instance size; both produce identical results.
pub fn count_simplices_exact(h: &Hypergraph) -> SimplexStats {
    stats_from_simplices(h, &enumerate_simplices(h))
}

/// Census via the edge-driven scan regardless of instance size.
pub fn count_simplices_edge_driven(h: &Hypergraph) -> SimplexStats {
    stats_from_simplices(h, &enumerate_edge_driven(h))
}

/// Census via plain subset enumeration regardless of instance size.
pub fn count_simplices_enumerated(h: &Hypergraph) -> SimplexStats {
    stats_from_simplices(h, &enumerate_by_subsets(h, &h.active_vertices()))
}

fn enumerate_by_subsets(h: &Hypergraph, active: &[VertexId]) -> Vec<Vec<VertexId>> {
    active
        .iter()
        .copied()
        .combinations(h.k() + 1)
        .filter(|x| spans_simplex(h, x))
        .collect()
}

/// For every edge, candidate apexes are the vertices completing all k of its
/// (k-1)-faces; each simplex is recorded once, at its max-id apex.
fn enumerate_edge_driven(h: &Hypergraph) -> Vec<Vec<VertexId>> {
    let mut completions: HashMap<Vec<VertexId>, Vec<VertexId>> = HashMap::new();
    for e in h.edges() {
        for &v in e.vertices() {
            completions.entry(e.without(v)).or_default().push(v);
        }
    }
    for apexes in completions.values_mut() {
        apexes.sort_unstable();
    }

    let mut out = Vec::new();
    let mut faces: Vec<&[VertexId]> = Vec::new();
    for e in h.edges() {
        let face_lists: Option<Vec<&Vec<VertexId>>> = e
            .vertices()
            .iter()
            .map(|&v| completions.get(&e.without(v)))
            .collect();
        let Some(mut lists) = face_lists else { continue };
        lists.sort_by_key(|l| l.len());
        faces.clear();
        faces.extend(lists.iter().map(|l| l.as_slice()));
        'cand: for &z in faces[0] {
            // Each simplex appears once, at the edge omitting its largest vertex.
            if z <= e.max_vertex() {
                continue;
            }
            for other in &faces[1..] {
                if other.binary_search(&z).is_err() {
                    continue 'cand;
                }
            }
            let mut x = e.vertices().to_vec();
            x.push(z);
            out.push(x);
        }
    }
    out.sort_unstable();
    out
}

fn stats_from_simplices(h: &Hypergraph, simplices: &[Vec<VertexId>]) -> SimplexStats {
    let mut per_edge_labeled = vec![0u64; h.m()];
    let mut per_edge_containing = vec![0u64; h.m()];
    let mut per_vertex: HashMap<VertexId, u64> = HashMap::new();
    let mut face = Vec::with_capacity(h.k());
    for x in simplices {
        for &v in x {
            *per_vertex.entry(v).or_insert(0) += 1;
        }
        for skip in 0..x.len() {
            face.clear();
            face.extend(x.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            let e = Hyperedge::new(face.clone()).expect("simplex faces are valid edges");
            let idx = h.edge_position(&e).expect("simplex faces are present edges");
            per_edge_containing[idx] += 1;
        }
        let (e, _) = simplex_label(h, x);
        per_edge_labeled[h.edge_position(&e).unwrap()] += 1;
    }
    SimplexStats {
        t_k: simplices.len() as u64,
        delta_e: per_edge_containing.iter().copied().max().unwrap_or(0),
        delta_v: per_vertex.values().copied().max().unwrap_or(0),
        per_edge_labeled,
        per_edge_containing,
    }
}

/// A simplex minus one edge: k edges through a shared apex over a base set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperwedge {
    pub apex: VertexId,
    pub base: Hyperedge,
    pub edges: Vec<Hyperedge>,
}

/// The k+1 hyperwedges of the vertex set `x` (size k+1), one per apex choice.
/// Purely combinatorial; the edges need not exist in any hypergraph.
pub fn hyperwedges_of(x: &[VertexId]) -> Vec<Hyperwedge> {
    assert!(x.len() >= 3, "a hyperwedge needs at least 3 vertices");
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    assert!(
        sorted.windows(2).all(|w| w[0] < w[1]),
        "hyperwedge vertices must be distinct"
    );
    sorted
        .iter()
        .map(|&apex| {
            let base = Hyperedge::new(
                sorted.iter().copied().filter(|&v| v != apex).collect(),
            )
            .unwrap();
            let edges = sorted
                .iter()
                .filter(|&&v| v != apex)
                .map(|&v| {
                    Hyperedge::new(sorted.iter().copied().filter(|&u| u != v).collect()).unwrap()
                })
                .collect();
            Hyperwedge { apex, base, edges }
        })
        .collect()
}
