use hypergraph_core::{Hyperedge, VertexId};
use itertools::Itertools;
use sampling_primitives::SeededRng;

use crate::bits::{CubeBits, NkBits};
use crate::error::GenError;

/// A two-segment adversarial instance: the Alice segment always precedes the
/// Bob segment in arrival order, mirroring one-way communication.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub k: usize,
    pub n_vertices: VertexId,
    pub alice: Vec<Hyperedge>,
    pub bob: Vec<Hyperedge>,
    /// Simplex count implied by the construction, when the family pins it
    /// exactly; the oracle re-derives it in tests rather than trusting this.
    pub expected_t: Option<u64>,
}

impl GadgetInstance {
    pub fn total_edges(&self) -> usize {
        self.alice.len() + self.bob.len()
    }
}

fn edge(verts: Vec<VertexId>) -> Hyperedge {
    Hyperedge::new(verts).expect("gadget vertices are distinct by construction")
}

/// Three-block construction over A, B, C (n vertices each): data bit at
/// (head, tail) inserts {a_head} (resp. {b_head}) union tail copied into C,
/// and Bob appends every connector {a_i, b_i} union a (k-2)-subset of C.
/// The result has a simplex exactly when the two bit sets share a slot.
///
/// Vertex ids: a_i = i, b_i = n + i, c_i = 2n + i.
pub fn lb_nk_from_bits(k: usize, n: VertexId, x: &NkBits, y: &NkBits) -> Result<GadgetInstance, GenError> {
    if (n as usize) < k {
        return Err(GenError::TooFewVertices { k, n });
    }
    let c = |i: u32| 2 * n + i;
    let data_edge = |group_base: u32, head: &u32, tail: &[u32]| {
        assert!(*head >= 1 && *head <= n, "head {head} outside [1, {n}]");
        assert_eq!(tail.len(), k - 1, "tail must have k-1 entries");
        assert!(tail.iter().all(|&t| t >= 1 && t <= n), "tail outside [1, {n}]");
        let mut verts = vec![group_base + head];
        verts.extend(tail.iter().map(|&t| c(t)));
        edge(verts)
    };

    let alice: Vec<Hyperedge> = x
        .ones()
        .map(|(head, tail)| data_edge(0, head, tail))
        .collect();

    let mut bob: Vec<Hyperedge> = y
        .ones()
        .map(|(head, tail)| data_edge(n, head, tail))
        .collect();
    for i in 1..=n {
        for tail in (1..=n).combinations(k - 2) {
            let mut verts = vec![i, n + i];
            verts.extend(tail.iter().map(|&t| c(t)));
            bob.push(edge(verts));
        }
    }

    Ok(GadgetInstance {
        k,
        n_vertices: 3 * n,
        alice,
        bob,
        expected_t: None,
    })
}

/// Matrix-and-apex construction: Alice turns each set cube bit into a row
/// tuple edge; Bob aims everything at one base tuple, adding a hyperwedge per
/// apex. The simplex count is n^k times the indexed bit.
///
/// Vertex ids: row vertex v_{i,j} = (i-1)n + j; apex c_i = kn + i.
pub fn lb_index_from_bits(
    k: usize,
    n: VertexId,
    x: &CubeBits,
    y_index: &[u32],
) -> Result<GadgetInstance, GenError> {
    if (n as usize) < 1 || k < 2 {
        return Err(GenError::TooFewVertices { k, n });
    }
    assert_eq!((x.side(), x.dims()), (n, k), "cube shape mismatch");
    if y_index.len() != k || y_index.iter().any(|&t| t < 1 || t > n) {
        return Err(GenError::IndexOutOfRange {
            given: y_index.to_vec(),
            k,
            n,
        });
    }
    let row = |i: usize, j: u32| (i as u32 - 1) * n + j;
    let apex_count = (n as u64).pow(k as u32);

    let alice: Vec<Hyperedge> = x
        .ones()
        .map(|tuple| {
            edge(
                tuple
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| row(i + 1, j))
                    .collect(),
            )
        })
        .collect();

    let base: Vec<VertexId> = y_index
        .iter()
        .enumerate()
        .map(|(i, &t)| row(i + 1, t))
        .collect();
    let mut bob = Vec::with_capacity((apex_count as usize) * k);
    for i in 1..=apex_count {
        let apex = k as u64 * n as u64 + i;
        let apex = VertexId::try_from(apex).expect("apex id fits u32");
        for skip in 0..k {
            let mut verts: Vec<VertexId> = base
                .iter()
                .copied()
                .enumerate()
                .filter_map(|(j, v)| (j != skip).then_some(v))
                .collect();
            verts.push(apex);
            bob.push(edge(verts));
        }
    }

    let expected_t = apex_count * u64::from(x.get(y_index));
    Ok(GadgetInstance {
        k,
        n_vertices: k as u32 * n + apex_count as u32,
        alice,
        bob,
        expected_t: Some(expected_t),
    })
}

/// (k+1)-group construction over A_1..A_k and D: a set bit i on Alice's side
/// spans edges {d_i} + one vertex from each of A_1..A_{k-1}; on Bob's side it
/// spans, for every j < k, edges {d_i} + one vertex from each group except
/// A_j; Bob always adds the n^k data-independent edges with one vertex per
/// group. The simplex count is exactly n^k times the intersection size.
///
/// Vertex ids: a^j_i = (j-1)n + i; d_i = kn + i.
pub fn lb_disj_from_bits(
    k: usize,
    n: VertexId,
    x: &[bool],
    y: &[bool],
) -> Result<GadgetInstance, GenError> {
    if n < 2 || k < 2 {
        return Err(GenError::TooFewVertices { k, n });
    }
    assert_eq!(x.len(), n as usize, "x must have one bit per index");
    assert_eq!(y.len(), n as usize, "y must have one bit per index");
    let a = |j: usize, i: u32| (j as u32 - 1) * n + i;
    let d = |i: u32| k as u32 * n + i;

    let groups = |count: usize| {
        (0..count)
            .map(|_| 1..=n)
            .multi_cartesian_product()
    };

    let mut alice = Vec::new();
    for (i, _) in x.iter().enumerate().filter(|(_, &b)| b) {
        let di = d(i as u32 + 1);
        for tuple in groups(k - 1) {
            let mut verts = vec![di];
            verts.extend(tuple.iter().enumerate().map(|(j, &v)| a(j + 1, v)));
            alice.push(edge(verts));
        }
    }

    let mut bob = Vec::new();
    for (i, _) in y.iter().enumerate().filter(|(_, &b)| b) {
        let di = d(i as u32 + 1);
        for skip in 1..k {
            for tuple in groups(k - 1) {
                let mut verts = vec![di];
                let kept = (1..=k).filter(|&j| j != skip);
                verts.extend(kept.zip(tuple.iter()).map(|(j, &v)| a(j, v)));
                bob.push(edge(verts));
            }
        }
    }
    for tuple in groups(k) {
        bob.push(edge(
            tuple.iter().enumerate().map(|(j, &v)| a(j + 1, v)).collect(),
        ));
    }

    let common = x
        .iter()
        .zip(y)
        .filter(|(&xb, &yb)| xb && yb)
        .count() as u64;
    Ok(GadgetInstance {
        k,
        n_vertices: (k as u32 + 1) * n,
        alice,
        bob,
        expected_t: Some((n as u64).pow(k as u32) * common),
    })
}

pub fn gen_lb_nk(
    k: usize,
    n: VertexId,
    x_seed: u64,
    y_seed: u64,
    density: f64,
) -> Result<GadgetInstance, GenError> {
    if (n as usize) < k {
        return Err(GenError::TooFewVertices { k, n });
    }
    let x = NkBits::random(n, k, density, &mut SeededRng::new(x_seed).rng());
    let y = NkBits::random(n, k, density, &mut SeededRng::new(y_seed).rng());
    lb_nk_from_bits(k, n, &x, &y)
}

pub fn gen_lb_index(
    k: usize,
    n: VertexId,
    x_seed: u64,
    y_index: &[u32],
) -> Result<GadgetInstance, GenError> {
    if (n as usize) < 1 || k < 2 {
        return Err(GenError::TooFewVertices { k, n });
    }
    // The density promise behind the hardness result pins Hamming weight near
    // half; a fair coin per bit matches it in expectation.
    let x = CubeBits::random(n, k, 0.5, &mut SeededRng::new(x_seed).rng());
    lb_index_from_bits(k, n, &x, y_index)
}

pub fn gen_lb_disj(
    k: usize,
    n: VertexId,
    x_seed: u64,
    y_seed: u64,
    density: f64,
) -> Result<GadgetInstance, GenError> {
    if n < 2 || k < 2 {
        return Err(GenError::TooFewVertices { k, n });
    }
    let draw = |seed: u64| -> Vec<bool> {
        let mut rng = SeededRng::new(seed).rng();
        (0..n).map(|_| rand::Rng::gen_bool(&mut rng, density)).collect()
    };
    lb_disj_from_bits(k, n, &draw(x_seed), &draw(y_seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypergraph_core::{count_simplices_exact, Hypergraph};

    fn oracle_t(inst: &GadgetInstance) -> (u64, u64) {
        let mut edges = inst.alice.clone();
        edges.extend(inst.bob.clone());
        let h = Hypergraph::new(inst.k, inst.n_vertices, edges).unwrap();
        let stats = count_simplices_exact(&h);
        (stats.t_k, stats.delta_v)
    }

    #[test]
    fn nk_all_zero_vectors_have_no_simplex() {
        let inst = lb_nk_from_bits(3, 4, &NkBits::empty(), &NkBits::empty()).unwrap();
        assert!(inst.alice.is_empty());
        // Connectors alone: n * C(n, k-2) edges.
        assert_eq!(inst.bob.len(), 16);
        assert_eq!(oracle_t(&inst).0, 0);
    }

    #[test]
    fn nk_single_common_slot_builds_one_simplex() {
        let mut x = NkBits::empty();
        let mut y = NkBits::empty();
        x.insert(2, vec![1, 3]);
        y.insert(2, vec![1, 3]);
        let inst = lb_nk_from_bits(3, 4, &x, &y).unwrap();
        assert_eq!(oracle_t(&inst).0, 1);
    }

    #[test]
    fn nk_simplex_presence_tracks_intersection() {
        for seeds in [(1, 2), (3, 4), (5, 6), (7, 8)] {
            for k in [2usize, 3] {
                let x = NkBits::random(4, k, 0.3, &mut SeededRng::new(seeds.0).rng());
                let y = NkBits::random(4, k, 0.3, &mut SeededRng::new(seeds.1).rng());
                let inst = lb_nk_from_bits(k, 4, &x, &y).unwrap();
                let has_simplex = oracle_t(&inst).0 > 0;
                assert_eq!(
                    has_simplex,
                    x.intersection_size(&y) > 0,
                    "k={k} seeds={seeds:?}"
                );
            }
        }
    }

    #[test]
    fn index_counts_are_zero_or_cube_sized() {
        let mut x = CubeBits::zeros(2, 2);
        let inst = lb_index_from_bits(2, 2, &x, &[1, 2]).unwrap();
        assert_eq!(inst.expected_t, Some(0));
        assert_eq!(oracle_t(&inst).0, 0);

        x.set(&[1, 2], true);
        let inst = lb_index_from_bits(2, 2, &x, &[1, 2]).unwrap();
        assert_eq!(inst.expected_t, Some(4));
        assert_eq!(oracle_t(&inst).0, 4);
    }

    #[test]
    fn index_oracle_matches_formula_on_random_vectors() {
        for seed in 0..6 {
            let x = CubeBits::random(2, 3, 0.5, &mut SeededRng::new(seed).rng());
            let y = [2, 1, 2];
            let inst = lb_index_from_bits(3, 2, &x, &y).unwrap();
            let want = 8 * u64::from(x.get(&y));
            assert_eq!(oracle_t(&inst).0, want, "seed={seed}");
            assert_eq!(inst.expected_t, Some(want));
        }
    }

    #[test]
    fn index_rejects_bad_indices() {
        let x = CubeBits::zeros(2, 2);
        assert!(matches!(
            lb_index_from_bits(2, 2, &x, &[1, 3]),
            Err(GenError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            lb_index_from_bits(2, 2, &x, &[1]),
            Err(GenError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn disj_count_is_cube_times_intersection() {
        let inst =
            lb_disj_from_bits(3, 2, &[true, false], &[false, true]).unwrap();
        assert_eq!(inst.expected_t, Some(0));
        assert_eq!(oracle_t(&inst).0, 0);

        let inst = lb_disj_from_bits(3, 2, &[true, false], &[true, true]).unwrap();
        assert_eq!(inst.expected_t, Some(8));
        let (t, delta_v) = oracle_t(&inst);
        assert_eq!(t, 8);
        assert_eq!(delta_v, 8);
    }

    #[test]
    fn seeded_gadgets_are_deterministic() {
        let a = gen_lb_nk(3, 4, 1, 2, 0.4).unwrap();
        let b = gen_lb_nk(3, 4, 1, 2, 0.4).unwrap();
        assert_eq!(a.alice, b.alice);
        assert_eq!(a.bob, b.bob);

        let a = gen_lb_disj(2, 5, 9, 10, 0.5).unwrap();
        let b = gen_lb_disj(2, 5, 9, 10, 0.5).unwrap();
        assert_eq!(a.alice, b.alice);
        assert_eq!(a.bob, b.bob);

        let a = gen_lb_index(2, 3, 4, &[2, 2]).unwrap();
        let b = gen_lb_index(2, 3, 4, &[2, 2]).unwrap();
        assert_eq!(a.alice, b.alice);
        assert_eq!(a.bob, b.bob);
    }
}
