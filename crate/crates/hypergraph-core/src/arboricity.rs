use crate::error::HypergraphError;
use crate::graph::Hypergraph;

/// Default limit on non-isolated vertices for the exact hyperarboricity scan.
pub const DEFAULT_ARBORICITY_CAP: usize = 16;

/// Exact hyperarboricity: the maximum over vertex sets S (|S| >= 2) of
/// ceil(|E(S)| / (|S| - 1)), where E(S) are the edges lying inside S.
/// Edgeless hypergraphs have hyperarboricity 0.
///
/// The scan enumerates subsets of the non-isolated vertices (isolated ones
/// only dilute the ratio), so the cap applies to that count. Instances above
/// the cap are refused rather than silently truncated.
pub fn hyperarboricity_exact(h: &Hypergraph, cap: usize) -> Result<u64, HypergraphError> {
    if h.m() == 0 {
        return Ok(0);
    }
    let active = h.active_vertices();
    let a = active.len();
    if a > cap {
        return Err(HypergraphError::VertexCapExceeded { active: a, cap });
    }

    let edge_masks: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| {
            e.vertices()
                .iter()
                .map(|v| 1u32 << active.binary_search(v).unwrap())
                .fold(0, |m, b| m | b)
        })
        .collect();

    // counts[s] = number of edges whose vertex mask is exactly s; the
    // subset-sum sweep turns that into "edges contained in s".
    let mut counts = vec![0u32; 1usize << a];
    for &mask in &edge_masks {
        counts[mask as usize] += 1;
    }
    for bit in 0..a {
        for s in 0..counts.len() {
            if s & (1 << bit) != 0 {
                counts[s] += counts[s ^ (1 << bit)];
            }
        }
    }

    let mut best = 0u64;
    for (s, &inside) in counts.iter().enumerate() {
        let size = s.count_ones() as u64;
        if size >= 2 && inside > 0 {
            best = best.max(div_ceil(inside as u64, size - 1));
        }
    }
    Ok(best)
}

/// Sum over all edges of the minimum vertex degree within the edge.
pub fn sum_min_degrees(h: &Hypergraph) -> u64 {
    h.edges()
        .iter()
        .map(|e| e.vertices().iter().map(|&v| h.deg(v)).min().unwrap())
        .sum()
}

fn div_ceil(a: u64, b: u64) -> u64 {
    (a + b - 1) / b
}
