use hypergraph_core::{Hyperedge, Hypergraph, VertexId};
use rand::seq::SliceRandom;
use sampling_primitives::SeededRng;
use serde::{Deserialize, Serialize};
use stream_engine::EdgeStream;

use crate::basic::{gen_complete, gen_planted, gen_random};
use crate::error::GenError;
use crate::gadgets::{gen_lb_disj, gen_lb_index, gen_lb_nk, GadgetInstance};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Complete {
        k: usize,
        n: VertexId,
    },
    Random {
        k: usize,
        n: VertexId,
        m: usize,
    },
    Planted {
        k: usize,
        n: VertexId,
        m: usize,
        t_target: u64,
    },
    LbNk {
        k: usize,
        n: VertexId,
        density: f64,
    },
    LbIndex {
        k: usize,
        n: VertexId,
        y_index: Vec<u32>,
    },
    LbDisj {
        k: usize,
        n: VertexId,
        density: f64,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalOrder {
    /// Lexicographic within each segment; stable for debugging.
    Sorted,
    /// Seeded permutation. Gadget instances shuffle within the Alice and Bob
    /// segments separately, keeping Alice first.
    #[default]
    Shuffled,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub order: ArrivalOrder,
    pub seed: u64,
}

/// Family facts the generator knows at build time. Exact counts here are
/// construction guarantees; tests re-derive them through the oracle.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyMeta {
    Complete,
    Random,
    Planted { t_target: u64 },
    LbNk,
    LbIndex { expected_t: u64 },
    LbDisj { expected_t: u64 },
}

#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub hypergraph: Hypergraph,
    /// Number of leading arrival positions that belong to the Alice segment;
    /// zero for single-segment families.
    pub alice_prefix: usize,
    pub meta: FamilyMeta,
}

impl GeneratedInstance {
    pub fn stream(&self) -> EdgeStream {
        EdgeStream::from_hypergraph(&self.hypergraph)
    }
}

impl GeneratorSpec {
    /// Materializes the instance. The hypergraph's edge order is the arrival
    /// order; identical specs produce identical sequences.
    pub fn build(&self) -> Result<GeneratedInstance, GenError> {
        let arrival_rng = SeededRng::new(self.seed).derive(u64::MAX);
        match &self.family {
            Family::Complete { k, n } => {
                let h = gen_complete(*k, *n)?;
                self.single_segment(h, FamilyMeta::Complete, arrival_rng)
            }
            Family::Random { k, n, m } => {
                let h = gen_random(*k, *n, *m, self.seed)?;
                self.single_segment(h, FamilyMeta::Random, arrival_rng)
            }
            Family::Planted { k, n, m, t_target } => {
                let h = gen_planted(*k, *n, *m, *t_target, self.seed)?;
                self.single_segment(
                    h,
                    FamilyMeta::Planted {
                        t_target: *t_target,
                    },
                    arrival_rng,
                )
            }
            Family::LbNk { k, n, density } => {
                let seed = SeededRng::new(self.seed);
                let inst = gen_lb_nk(*k, *n, seed.derive(1).key(), seed.derive(2).key(), *density)?;
                self.two_segment(inst, FamilyMeta::LbNk, arrival_rng)
            }
            Family::LbIndex { k, n, y_index } => {
                let inst = gen_lb_index(*k, *n, SeededRng::new(self.seed).derive(1).key(), y_index)?;
                let meta = FamilyMeta::LbIndex {
                    expected_t: inst.expected_t.expect("index gadget pins the count"),
                };
                self.two_segment(inst, meta, arrival_rng)
            }
            Family::LbDisj { k, n, density } => {
                let seed = SeededRng::new(self.seed);
                let inst =
                    gen_lb_disj(*k, *n, seed.derive(1).key(), seed.derive(2).key(), *density)?;
                let meta = FamilyMeta::LbDisj {
                    expected_t: inst.expected_t.expect("disjointness gadget pins the count"),
                };
                self.two_segment(inst, meta, arrival_rng)
            }
        }
    }

    fn single_segment(
        &self,
        h: Hypergraph,
        meta: FamilyMeta,
        arrival: SeededRng,
    ) -> Result<GeneratedInstance, GenError> {
        let mut edges = h.edges().to_vec();
        order_segment(&mut edges, self.order, &arrival, 0);
        Ok(GeneratedInstance {
            hypergraph: Hypergraph::new(h.k(), h.n(), edges)?,
            alice_prefix: 0,
            meta,
        })
    }

    fn two_segment(
        &self,
        inst: GadgetInstance,
        meta: FamilyMeta,
        arrival: SeededRng,
    ) -> Result<GeneratedInstance, GenError> {
        let mut alice = inst.alice;
        let mut bob = inst.bob;
        order_segment(&mut alice, self.order, &arrival, 1);
        order_segment(&mut bob, self.order, &arrival, 2);
        let alice_prefix = alice.len();
        alice.extend(bob);
        Ok(GeneratedInstance {
            hypergraph: Hypergraph::new(inst.k, inst.n_vertices, alice)?,
            alice_prefix,
            meta,
        })
    }
}

fn order_segment(edges: &mut [Hyperedge], order: ArrivalOrder, arrival: &SeededRng, label: u64) {
    match order {
        ArrivalOrder::Sorted => edges.sort_unstable_by(|a, b| a.vertices().cmp(b.vertices())),
        ArrivalOrder::Shuffled => edges.shuffle(&mut arrival.derive(label).rng()),
    }
}
