use crate::graph::{Hyperedge, Hypergraph, VertexId};

/// Degree-guided ordering of one edge's vertices.
///
/// The chain c_1..c_k is built greedily: c_i minimizes the co-degree of the
/// prefix extended by one vertex, with ties going to the smaller id. The
/// recorded `prefix_codegs` entry i-1 is codeg({c_1..c_i}); only the first
/// k-1 steps involve a choice, so there are k-1 entries and the last one is
/// the co-degree of the whole chain head {c_1..c_{k-1}}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeOrdering {
    chain: Vec<VertexId>,
    prefix_codegs: Vec<u64>,
}

impl RelativeOrdering {
    pub fn chain(&self) -> &[VertexId] {
        &self.chain
    }

    pub fn prefix_codegs(&self) -> &[u64] {
        &self.prefix_codegs
    }

    /// codeg of the first k-1 chain vertices, the quantity that sizes the
    /// neighbor-sampling budget downstream.
    pub fn head_codeg(&self) -> u64 {
        *self.prefix_codegs.last().unwrap()
    }

    /// The chain head {c_1..c_{k-1}} as a sorted set.
    pub fn head(&self) -> Vec<VertexId> {
        let mut s = self.chain[..self.chain.len() - 1].to_vec();
        s.sort_unstable();
        s
    }
}

/// Computes the relative ordering of `e`'s vertices within `h`.
///
/// Panics if `e` is not an edge of `h`.
pub fn e_relative_order(h: &Hypergraph, e: &Hyperedge) -> RelativeOrdering {
    assert!(h.contains_edge(e), "edge {e} not in the hypergraph");
    let k = h.k();
    let mut remaining: Vec<VertexId> = e.vertices().to_vec();
    let mut prefix: Vec<VertexId> = Vec::with_capacity(k - 1);
    let mut chain = Vec::with_capacity(k);
    let mut prefix_codegs = Vec::with_capacity(k - 1);
    for _ in 1..k {
        let (pos, best, codeg) = argmin_reldeg(h, &prefix, &remaining);
        remaining.swap_remove(pos);
        chain.push(best);
        prefix_codegs.push(codeg);
        insert_sorted(&mut prefix, best);
    }
    // One vertex left; it closes the chain without a comparison.
    chain.push(remaining[0]);
    RelativeOrdering { chain, prefix_codegs }
}

/// Whether the chain maximum of `e` precedes the outside vertex `z`, i.e.
/// every chain vertex (and the chain tail c_k) compares below `z` on
/// (prefix co-degree, id) at its own selection prefix.
///
/// Panics if `e` is not in `h` or `z` lies inside `e`.
pub fn precedes(h: &Hypergraph, e: &Hyperedge, z: VertexId) -> bool {
    assert!(!e.contains(z), "vertex {z} lies inside {e}");
    let k = h.k();
    let ord = e_relative_order(h, e);
    let chain = ord.chain();
    let mut prefix: Vec<VertexId> = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let rz = h.reldeg(&prefix, z);
        let ci = chain[i];
        if (ord.prefix_codegs()[i], ci) >= (rz, z) {
            return false;
        }
        if i == k - 2 {
            // Tail condition, evaluated at the same prefix as the last choice.
            let ck = chain[k - 1];
            if (h.reldeg(&prefix, ck), ck) >= (rz, z) {
                return false;
            }
        }
        insert_sorted(&mut prefix, ci);
    }
    true
}

/// Canonical (edge, apex) label of a simplex spanned by `x` (k+1 vertices).
///
/// Vertices are peeled off by minimum relative degree with id tie-breaks;
/// the final two candidates are compared at the prefix of length k-2. The
/// result is the unique label for which `precedes` holds.
///
/// Panics unless `x` spans a simplex of `h`.
pub fn simplex_label(h: &Hypergraph, x: &[VertexId]) -> (Hyperedge, VertexId) {
    let k = h.k();
    assert_eq!(x.len(), k + 1, "a simplex of a {k}-uniform hypergraph has {} vertices", k + 1);
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    assert!(
        spans_simplex(h, &sorted),
        "vertices do not span a simplex"
    );

    let mut remaining = sorted;
    let mut prefix: Vec<VertexId> = Vec::new();
    let mut picked: Vec<VertexId> = Vec::with_capacity(k);
    let mut tail_prefix: Vec<VertexId> = Vec::new();
    for i in 0..k - 1 {
        if i == k - 2 {
            tail_prefix = prefix.clone();
        }
        let (pos, best, _) = argmin_reldeg(h, &prefix, &remaining);
        remaining.swap_remove(pos);
        picked.push(best);
        insert_sorted(&mut prefix, best);
    }
    // Two candidates remain; the smaller on (reldeg at the k-2 prefix, id)
    // joins the edge, the other becomes the apex.
    let (a, b) = (remaining[0], remaining[1]);
    let ka = (h.reldeg(&tail_prefix, a), a);
    let kb = (h.reldeg(&tail_prefix, b), b);
    let (u_k, apex) = if ka < kb { (a, b) } else { (b, a) };
    picked.push(u_k);
    let edge = Hyperedge::new(picked).expect("label vertices are distinct");
    (edge, apex)
}

/// Sum over all edges of the co-degree of the chain head. For k = 2 the chain
/// head is the endpoint of smaller (degree, id).
pub fn sum_prefix_codegs(h: &Hypergraph) -> u64 {
    h.edges()
        .iter()
        .map(|e| e_relative_order(h, e).head_codeg())
        .sum()
}

pub(crate) fn spans_simplex(h: &Hypergraph, sorted: &[VertexId]) -> bool {
    if sorted.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    let mut face: Vec<VertexId> = Vec::with_capacity(sorted.len() - 1);
    for skip in 0..sorted.len() {
        face.clear();
        face.extend(sorted.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
        if !h.contains_edge_verts(&face) {
            return false;
        }
    }
    true
}

fn argmin_reldeg(
    h: &Hypergraph,
    prefix: &[VertexId],
    candidates: &[VertexId],
) -> (usize, VertexId, u64) {
    let mut best: Option<(u64, VertexId, usize)> = None;
    for (pos, &v) in candidates.iter().enumerate() {
        let r = h.reldeg(prefix, v);
        if best.map_or(true, |b| (r, v) < (b.0, b.1)) {
            best = Some((r, v, pos));
        }
    }
    let (codeg, v, pos) = best.expect("candidate list is never empty");
    (pos, v, codeg)
}

fn insert_sorted(s: &mut Vec<VertexId>, v: VertexId) {
    let at = s.partition_point(|&u| u < v);
    s.insert(at, v);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Hypergraph;

    fn simplex4() -> Hypergraph {
        let edges = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
            .iter()
            .map(|v| Hyperedge::new(v.to_vec()).unwrap())
            .collect();
        Hypergraph::new(3, 4, edges).unwrap()
    }

    #[test]
    fn chain_on_single_simplex() {
        let h = simplex4();
        let ord = e_relative_order(&h, &Hyperedge::new(vec![1, 2, 3]).unwrap());
        assert_eq!(ord.chain(), &[1, 2, 3]);
        assert_eq!(ord.prefix_codegs(), &[3, 2]);
        assert_eq!(ord.head_codeg(), 2);
        assert_eq!(ord.head(), vec![1, 2]);
    }

    #[test]
    fn outside_vertex_follows_chain_on_single_simplex() {
        let h = simplex4();
        let e = Hyperedge::new(vec![1, 2, 3]).unwrap();
        assert!(precedes(&h, &e, 4));
    }

    #[test]
    fn tie_breaks_block_smaller_outside_vertex() {
        // Same simplex, but z = 1 sits below the chain of {2,3,4} on ids.
        let h = simplex4();
        let e = Hyperedge::new(vec![2, 3, 4]).unwrap();
        assert!(!precedes(&h, &e, 1));
    }

    #[test]
    #[should_panic(expected = "lies inside")]
    fn precedes_rejects_inside_vertex() {
        let h = simplex4();
        let e = Hyperedge::new(vec![1, 2, 3]).unwrap();
        precedes(&h, &e, 2);
    }

    #[test]
    fn label_of_single_simplex() {
        let h = simplex4();
        let (e, z) = simplex_label(&h, &[4, 2, 3, 1]);
        assert_eq!(e.vertices(), &[1, 2, 3]);
        assert_eq!(z, 4);
    }

    #[test]
    fn triangle_label_orders_by_degree() {
        // Triangle {1,2,3} plus pendant edges raising deg(2) and deg(3):
        // label must be ({1,2}, 3) ordered by (degree, id).
        let mut edges: Vec<Hyperedge> = [[1, 2], [1, 3], [2, 3]]
            .iter()
            .map(|v| Hyperedge::new(v.to_vec()).unwrap())
            .collect();
        edges.push(Hyperedge::new(vec![2, 4]).unwrap());
        edges.push(Hyperedge::new(vec![3, 4]).unwrap());
        edges.push(Hyperedge::new(vec![3, 5]).unwrap());
        let h = Hypergraph::new(2, 5, edges).unwrap();
        let (e, z) = simplex_label(&h, &[1, 2, 3]);
        assert_eq!(e.vertices(), &[1, 2]);
        assert_eq!(z, 3);
    }

    #[test]
    #[should_panic(expected = "do not span a simplex")]
    fn label_requires_simplex() {
        let mut h_edges: Vec<Hyperedge> = [[1, 2, 3], [1, 2, 4], [1, 3, 4]]
            .iter()
            .map(|v| Hyperedge::new(v.to_vec()).unwrap())
            .collect();
        h_edges.push(Hyperedge::new(vec![1, 2, 5]).unwrap());
        let h = Hypergraph::new(3, 5, h_edges).unwrap();
        simplex_label(&h, &[1, 2, 3, 4]);
    }

    #[test]
    fn prefix_codeg_sum_on_single_simplex() {
        assert_eq!(sum_prefix_codegs(&simplex4()), 8);
    }

    #[test]
    fn label_agrees_with_precedes_on_dense_instance() {
        // Complete 3-graph on 6 vertices: every labeled simplex must satisfy
        // precedes, and no other (edge, apex) split of it may.
        let mut edges = Vec::new();
        for a in 1..=6u32 {
            for b in a + 1..=6 {
                for c in b + 1..=6 {
                    edges.push(Hyperedge::new(vec![a, b, c]).unwrap());
                }
            }
        }
        let h = Hypergraph::new(3, 6, edges).unwrap();
        for a in 1..=6u32 {
            for b in a + 1..=6 {
                for c in b + 1..=6 {
                    for d in c + 1..=6 {
                        let x = [a, b, c, d];
                        let (e, z) = simplex_label(&h, &x);
                        let mut hits = 0;
                        for &apex in &x {
                            let face: Vec<VertexId> =
                                x.iter().copied().filter(|&v| v != apex).collect();
                            let face = Hyperedge::new(face).unwrap();
                            if precedes(&h, &face, apex) {
                                hits += 1;
                                assert_eq!((face, apex), (e.clone(), z));
                            }
                        }
                        assert_eq!(hits, 1, "exactly one split satisfies precedes");
                    }
                }
            }
        }
    }
}
