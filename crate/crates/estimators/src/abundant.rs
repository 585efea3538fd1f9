//! Four-pass estimator keyed to the co-degree ordering of one sampled edge.
//!
//! A uniformly sampled edge `e` is reordered by the greedy minimum-co-degree
//! chain; the final chain prefix of size k-1 names a neighborhood that is
//! sampled uniformly, and a candidate apex contributes the prefix co-degree
//! exactly when it completes a simplex owned by `e` under the chain-induced
//! labeling. Averaging over candidates and scaling by m makes the output an
//! unbiased estimate of the simplex count.

use std::collections::HashMap;

use hypergraph_core::{Hyperedge, VertexId};
use sampling_primitives::{ReservoirSampler, SeededRng};
use stream_engine::{EdgeStream, SpaceMeter};

use crate::boost::{boosted_four_pass, FourPassTrial};
use crate::check_stream;
use crate::config::EstimatorConfig;
use crate::error::EstimatorError;
use crate::report::{Algorithm, Estimate};

const ALG_TAG: u64 = 1;
const PICK_STREAM: u64 = 0;
const SLOT_STREAM: u64 = 1;

/// State of one trial after its first two passes: the sampled edge, its
/// chain ordering, and every co-degree the later passes will compare
/// against. `r` is the neighbor-sampling budget, known here, which is what
/// lets the booster abort a batch before paying for passes three and four.
struct TrialHead {
    edge: Hyperedge,
    chain: Vec<VertexId>,
    prefix_codegs: Vec<u64>,
    tail_codeg: u64,
    r: u64,
}

impl TrialHead {
    fn head_codeg(&self) -> u64 {
        *self.prefix_codegs.last().unwrap()
    }

    /// Sorted first k-1 chain vertices; the set whose neighborhood is
    /// sampled in pass three.
    fn head_set(&self) -> Vec<VertexId> {
        let mut s = self.chain[..self.chain.len() - 1].to_vec();
        s.sort_unstable();
        s
    }
}

fn head_passes(
    stream: &EdgeStream,
    node: SeededRng,
    meter: &mut SpaceMeter,
) -> Result<TrialHead, EstimatorError> {
    if stream.m() == 0 {
        return Err(EstimatorError::EmptyStream);
    }
    let k = stream.k();

    let mut rng = node.derive(PICK_STREAM).rng();
    let mut pick = ReservoirSampler::new();
    meter.charge(k as u64);
    for e in stream.pass(meter) {
        pick.observe(e.clone(), &mut rng);
    }
    let edge = pick.into_sample().expect("stream verified nonempty");

    // One counter per nonempty vertex subset of the edge; codegs[s] ends the
    // pass holding the number of edges strictly containing subset s.
    let full: u32 = (1 << k) - 1;
    let mut codegs = vec![0u64; 1 << k];
    meter.charge(u64::from(full) - 1);
    for f in stream.pass(meter) {
        let mask = containment_mask(&edge, f);
        let mut s = mask;
        while s != 0 {
            // A proper subset of the edge is strictly contained in any edge
            // holding it; the full edge is strictly contained in none.
            if s != full {
                codegs[s as usize] += 1;
            }
            s = (s - 1) & mask;
        }
    }

    let (chain, prefix_codegs, tail_codeg) = chain_from_codegs(edge.vertices(), &codegs);
    let head_codeg = *prefix_codegs.last().unwrap();
    let r = ((head_codeg as f64) * (stream.m() as f64).powf(-1.0 / k as f64)).ceil() as u64;
    Ok(TrialHead {
        edge,
        chain,
        prefix_codegs,
        tail_codeg,
        r,
    })
}

/// Bitmask over `edge`'s sorted vertices marking which of them `f` contains.
fn containment_mask(edge: &Hyperedge, f: &Hyperedge) -> u32 {
    let mut mask = 0;
    for (i, &v) in edge.vertices().iter().enumerate() {
        if f.contains(v) {
            mask |= 1 << i;
        }
    }
    mask
}

/// Greedy chain over the edge's vertices: each step takes the vertex
/// minimizing (co-degree of prefix plus vertex, vertex id). Returns the
/// chain, the k-1 prefix co-degrees, and the co-degree of the chain tail at
/// the length-(k-2) prefix, which the labeling comparison needs.
fn chain_from_codegs(vertices: &[VertexId], codegs: &[u64]) -> (Vec<VertexId>, Vec<u64>, u64) {
    let k = vertices.len();
    let mut remaining: u32 = (1 << k) - 1;
    let mut prefix_mask: u32 = 0;
    let mut mask_before_last_pick: u32 = 0;
    let mut chain = Vec::with_capacity(k);
    let mut prefix_codegs = Vec::with_capacity(k - 1);
    for step in 0..k - 1 {
        if step == k - 2 {
            mask_before_last_pick = prefix_mask;
        }
        let mut best: Option<(u64, VertexId, u32)> = None;
        let mut bits = remaining;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            let idx = b.trailing_zeros() as usize;
            let key = (codegs[(prefix_mask | b) as usize], vertices[idx]);
            if best.map_or(true, |(c, v, _)| key < (c, v)) {
                best = Some((key.0, key.1, b));
            }
            bits &= bits - 1;
        }
        let (codeg, vertex, bit) = best.unwrap();
        chain.push(vertex);
        prefix_codegs.push(codeg);
        prefix_mask |= bit;
        remaining &= !bit;
    }
    let last_idx = remaining.trailing_zeros() as usize;
    chain.push(vertices[last_idx]);
    let tail_codeg = codegs[(mask_before_last_pick | remaining) as usize];
    (chain, prefix_codegs, tail_codeg)
}

fn tail_passes(
    stream: &EdgeStream,
    head: &TrialHead,
    node: SeededRng,
    meter: &mut SpaceMeter,
) -> f64 {
    let k = stream.k();
    let head_set = head.head_set();
    let r = head.r as usize;

    // Pass three: r independent single-slot reservoirs over the neighbors of
    // the chain head. Each qualifying edge carries exactly one vertex
    // outside the head, and distinct edges carry distinct vertices, so
    // uniform over qualifying edges is uniform over the neighborhood.
    let mut slots: Vec<ReservoirSampler<VertexId>> = (0..r).map(|_| ReservoirSampler::new()).collect();
    let mut rngs: Vec<_> = (0..r)
        .map(|j| node.derive(SLOT_STREAM).derive(j as u64).rng())
        .collect();
    meter.charge(r as u64 + 1);
    for f in stream.pass(meter) {
        if f.contains_all(&head_set) {
            let x = *f
                .vertices()
                .iter()
                .find(|v| !head_set.contains(v))
                .expect("a strict superset of the head has an extra vertex");
            for (slot, rng) in slots.iter_mut().zip(rngs.iter_mut()) {
                slot.observe(x, rng);
            }
        }
    }

    // Pass four bookkeeping, shared by slots that drew the same vertex. A
    // candidate equal to the chain tail re-draws the sampled edge itself and
    // can never head a (k+1)-vertex simplex, so it stays dead.
    let mut cand_of: HashMap<VertexId, usize> = HashMap::new();
    let mut cands: Vec<VertexId> = Vec::new();
    for slot in &slots {
        if let Some(&x) = slot.sample() {
            cand_of.entry(x).or_insert_with(|| {
                cands.push(x);
                cands.len() - 1
            });
        }
    }
    let alive: Vec<bool> = cands.iter().map(|&x| !head.edge.contains(x)).collect();

    let mut companion_of: HashMap<Hyperedge, (usize, usize)> = HashMap::new();
    for (ci, &x) in cands.iter().enumerate() {
        if !alive[ci] {
            continue;
        }
        meter.charge(k as u64);
        for (i, &v) in head.edge.vertices().iter().enumerate() {
            let mut verts = head.edge.without(v);
            verts.push(x);
            let companion = Hyperedge::new(verts).expect("alive candidates lie outside the edge");
            let previous = companion_of.insert(companion, (ci, i));
            debug_assert!(previous.is_none(), "companion edges are pairwise distinct");
        }
    }

    // prefixes[i] = sorted first i chain vertices; reldeg[ci][i] counts
    // stream edges containing prefixes[i] plus the candidate.
    let prefixes: Vec<Vec<VertexId>> = (0..k - 1)
        .map(|i| {
            let mut s = head.chain[..i].to_vec();
            s.sort_unstable();
            s
        })
        .collect();
    let mut reldeg = vec![vec![0u64; k - 1]; cands.len()];
    let mut present = vec![0u32; cands.len()];

    for f in stream.pass(meter) {
        if let Some(&(ci, i)) = companion_of.get(f) {
            present[ci] |= 1 << i;
        }
        for &v in f.vertices() {
            if let Some(&ci) = cand_of.get(&v) {
                if !alive[ci] {
                    continue;
                }
                for (i, prefix) in prefixes.iter().enumerate() {
                    if f.contains_all(prefix) {
                        reldeg[ci][i] += 1;
                    } else {
                        break;
                    }
                }
            }
        }
    }

    let full: u32 = (1 << k) - 1;
    let mut z_sum = 0u64;
    for slot in &slots {
        let Some(&x) = slot.sample() else { continue };
        let ci = cand_of[&x];
        if alive[ci] && present[ci] == full && owns_label(head, x, &reldeg[ci]) {
            z_sum += head.head_codeg();
        }
    }
    (stream.m() as f64 / head.r as f64) * z_sum as f64
}

/// Whether the simplex spanned by the edge and `x` is labeled by this edge
/// with apex `x`: every chain vertex, and the chain tail at the final
/// comparison prefix, must order strictly below `x` on (co-degree, id).
fn owns_label(head: &TrialHead, x: VertexId, reldeg_x: &[u64]) -> bool {
    let k = head.chain.len();
    for i in 0..k - 1 {
        if (head.prefix_codegs[i], head.chain[i]) >= (reldeg_x[i], x) {
            return false;
        }
        if i == k - 2 && (head.tail_codeg, head.chain[k - 1]) >= (reldeg_x[i], x) {
            return false;
        }
    }
    true
}

struct AbundantTrial;

impl FourPassTrial for AbundantTrial {
    type Head = TrialHead;

    fn head(
        &self,
        stream: &EdgeStream,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<(TrialHead, u64), EstimatorError> {
        let head = head_passes(stream, node, meter)?;
        let r = head.r;
        Ok((head, r))
    }

    fn tail(
        &self,
        stream: &EdgeStream,
        head: TrialHead,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<f64, EstimatorError> {
        Ok(tail_passes(stream, &head, node, meter))
    }
}

/// One four-pass run. Returns the unbiased estimate and the neighbor budget
/// R it used.
pub fn abundant_basic(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<(f64, u64), EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    let node = SeededRng::new(cfg.master_seed).derive(ALG_TAG);
    let mut meter = SpaceMeter::new();
    let head = head_passes(stream, node, &mut meter)?;
    let y = tail_passes(stream, &head, node, &mut meter);
    Ok((y, head.r))
}

/// Boosted four-pass estimate. Batch sizing follows the analytic variance
/// scale m^(1 + 1/k) of the basic estimator.
pub fn abundant_estimate(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    boosted_four_pass(
        stream,
        cfg,
        Algorithm::Abundant,
        1.0 + 1.0 / cfg.k as f64,
        &AbundantTrial,
    )
}
