use std::collections::HashSet;

use hypergraph_core::util::binomial;
use hypergraph_core::{Hyperedge, Hypergraph, VertexId};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use sampling_primitives::SeededRng;

use crate::error::GenError;

/// All C(n, k) edges on [n].
pub fn gen_complete(k: usize, n: VertexId) -> Result<Hypergraph, GenError> {
    if (n as usize) < k {
        return Err(GenError::TooFewVertices { k, n });
    }
    let edges: Vec<Hyperedge> = (1..=n)
        .combinations(k)
        .map(|v| Hyperedge::new(v).expect("combination is a valid edge"))
        .collect();
    Ok(Hypergraph::new(k, n, edges)?)
}

/// m distinct edges drawn uniformly without replacement.
pub fn gen_random(k: usize, n: VertexId, m: usize, seed: u64) -> Result<Hypergraph, GenError> {
    if (n as usize) < k {
        return Err(GenError::TooFewVertices { k, n });
    }
    let max = binomial(n as u64, k as u64);
    if m as u64 > max {
        return Err(GenError::TooManyEdges { m, max });
    }
    let mut rng = SeededRng::new(seed).rng();
    // Enumerate-and-shuffle up to a few million candidate edges; beyond that
    // m is necessarily sparse relative to the domain, so rejection is fast.
    let edges: Vec<Hyperedge> = if max <= 2_000_000 {
        let mut all: Vec<Vec<VertexId>> = (1..=n).combinations(k).collect();
        let (picked, _) = all.partial_shuffle(&mut rng, m);
        picked
            .iter()
            .map(|v| Hyperedge::new(v.clone()).expect("combination is a valid edge"))
            .collect()
    } else {
        let mut seen: HashSet<Vec<VertexId>> = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let mut verts: Vec<VertexId> = Vec::with_capacity(k);
            while verts.len() < k {
                let v = rng.gen_range(1..=n);
                if !verts.contains(&v) {
                    verts.push(v);
                }
            }
            verts.sort_unstable();
            if seen.insert(verts.clone()) {
                out.push(Hyperedge::new(verts).expect("distinct sorted vertices"));
            }
        }
        out
    };
    Ok(Hypergraph::new(k, n, edges)?)
}

/// Plants `t_target` simplices on disjoint (k+1)-vertex groups and pads with
/// filler edges up to m total. A filler candidate is rejected whenever some
/// apex would complete it into a simplex, so the final instance has exactly
/// t_target simplices and both per-edge and per-vertex maxima equal to 1.
pub fn gen_planted(
    k: usize,
    n: VertexId,
    m: usize,
    t_target: u64,
    seed: u64,
) -> Result<Hypergraph, GenError> {
    if (n as usize) < k {
        return Err(GenError::TooFewVertices { k, n });
    }
    let group = k + 1;
    let need_verts = t_target as usize * group;
    if need_verts > n as usize {
        return Err(GenError::InfeasiblePlant {
            reason: format!(
                "{t_target} disjoint simplices need {need_verts} vertices, have {n}"
            ),
        });
    }
    let planted_edges = t_target as usize * group;
    if m < planted_edges {
        return Err(GenError::InfeasiblePlant {
            reason: format!("{t_target} simplices already use {planted_edges} edges, m = {m}"),
        });
    }

    let mut edges: Vec<Hyperedge> = Vec::with_capacity(m);
    let mut present: HashSet<Vec<VertexId>> = HashSet::with_capacity(m);
    for g in 0..t_target as usize {
        let base = (g * group) as VertexId;
        for face in (base + 1..=base + group as VertexId).combinations(k) {
            present.insert(face.clone());
            edges.push(Hyperedge::new(face).expect("group face"));
        }
    }

    let mut rng = SeededRng::new(seed).rng();
    let mut attempts = 0usize;
    let budget = 200 * m.max(16);
    while edges.len() < m {
        attempts += 1;
        if attempts > budget {
            return Err(GenError::InfeasiblePlant {
                reason: format!(
                    "could not place {} filler edges after {attempts} attempts",
                    m - edges.len()
                ),
            });
        }
        let mut verts: Vec<VertexId> = Vec::with_capacity(k);
        while verts.len() < k {
            let v = rng.gen_range(1..=n);
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        verts.sort_unstable();
        if present.contains(&verts) || completes_simplex(&present, &verts, n) {
            continue;
        }
        present.insert(verts.clone());
        edges.push(Hyperedge::new(verts).expect("distinct sorted vertices"));
    }
    Ok(Hypergraph::new(k, n, edges)?)
}

/// True iff adding `edge` would close a simplex: some apex z has every face
/// (edge minus one vertex, plus z) already present.
fn completes_simplex(
    present: &HashSet<Vec<VertexId>>,
    edge: &[VertexId],
    n: VertexId,
) -> bool {
    'apex: for z in 1..=n {
        if edge.contains(&z) {
            continue;
        }
        for skip in 0..edge.len() {
            let mut face: Vec<VertexId> = edge
                .iter()
                .copied()
                .enumerate()
                .filter_map(|(i, v)| (i != skip).then_some(v))
                .collect();
            let pos = face.partition_point(|&v| v < z);
            face.insert(pos, z);
            if !present.contains(&face) {
                continue 'apex;
            }
        }
        return true;
    }
    false
}
