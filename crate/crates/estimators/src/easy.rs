//! Four-pass estimator keyed to the global degree ordering.
//!
//! Vertices are totally ordered by (degree, id). For a uniformly sampled
//! edge, candidates are drawn uniformly from the distinct neighbors of its
//! order-minimal vertex, excluding the edge itself; a candidate that closes
//! a simplex while ordering above the whole edge contributes the size of
//! that neighborhood. Uniformity over distinct neighbors requires min-hash
//! sampling rather than a plain reservoir: a vertex sharing many edges with
//! the base vertex would otherwise be overweighted. The neighborhood size
//! itself comes from a distinct-count estimator, exact or sketched per the
//! configuration.

use std::collections::HashMap;

use hypergraph_core::{Hyperedge, VertexId};
use sampling_primitives::{DistinctSampler, F0Estimator, F0Mode, ReservoirSampler, SeededRng};
use stream_engine::{EdgeStream, SpaceMeter};

use crate::boost::{boosted_four_pass, FourPassTrial};
use crate::check_stream;
use crate::config::EstimatorConfig;
use crate::error::EstimatorError;
use crate::report::{Algorithm, Estimate};

const ALG_TAG: u64 = 2;
const PICK_STREAM: u64 = 0;
const SLOT_STREAM: u64 = 1;
const F0_STREAM: u64 = 2;

struct EasyHead {
    /// Sampled edge's vertices sorted by (degree, id), with their degrees.
    ordered: Vec<VertexId>,
    degs: Vec<u64>,
    r: u64,
}

fn head_passes(
    stream: &EdgeStream,
    node: SeededRng,
    meter: &mut SpaceMeter,
) -> Result<EasyHead, EstimatorError> {
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

    let mut degs = vec![0u64; k];
    meter.charge(k as u64);
    for f in stream.pass(meter) {
        for (i, &u) in edge.vertices().iter().enumerate() {
            if f.contains(u) {
                degs[i] += 1;
            }
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (degs[i], edge.vertices()[i]));
    let ordered: Vec<VertexId> = order.iter().map(|&i| edge.vertices()[i]).collect();
    let degs: Vec<u64> = order.iter().map(|&i| degs[i]).collect();
    let r = (degs[0] as f64 * (stream.m() as f64).powf(-0.5)).ceil() as u64;
    Ok(EasyHead { ordered, degs, r })
}

fn tail_passes(
    stream: &EdgeStream,
    head: &EasyHead,
    node: SeededRng,
    f0_mode: F0Mode,
    meter: &mut SpaceMeter,
) -> f64 {
    let k = stream.k();
    let u1 = head.ordered[0];
    let rest = &head.ordered[1..];
    let r = head.r as usize;

    let mut slots: Vec<DistinctSampler> = (0..r)
        .map(|j| DistinctSampler::new(node.derive(SLOT_STREAM).derive(j as u64).key()))
        .collect();
    let mut f0 = match f0_mode {
        F0Mode::Exact => F0Estimator::exact(),
        F0Mode::Kmv { epsilon } => F0Estimator::kmv(epsilon, node.derive(F0_STREAM).key()),
    };
    meter.charge(2 * r as u64);
    let mut f0_words = 0;
    for f in stream.pass(meter) {
        if !f.contains(u1) {
            continue;
        }
        for &x in f.vertices() {
            if x == u1 {
                continue;
            }
            f0.observe(u64::from(x));
            if !rest.contains(&x) {
                for slot in slots.iter_mut() {
                    slot.observe(u64::from(x));
                }
            }
        }
        let now = f0.space_words();
        if now > f0_words {
            meter.charge(now - f0_words);
            f0_words = now;
        }
    }
    // Neighborhood size net of the edge's other vertices, which the sampler
    // domain excludes.
    let z_value = (f0.estimate() as f64 - (k as f64 - 1.0)).max(0.0);

    let mut cand_of: HashMap<VertexId, usize> = HashMap::new();
    let mut cands: Vec<VertexId> = Vec::new();
    for slot in &slots {
        if let Some(x) = slot.sample() {
            let x = x as VertexId;
            cand_of.entry(x).or_insert_with(|| {
                cands.push(x);
                cands.len() - 1
            });
        }
    }

    let mut companion_of: HashMap<Hyperedge, (usize, usize)> = HashMap::new();
    for (ci, &x) in cands.iter().enumerate() {
        meter.charge(2);
        for (i, &v) in head.ordered.iter().enumerate() {
            let mut verts: Vec<VertexId> = head.ordered.iter().copied().filter(|&u| u != v).collect();
            verts.push(x);
            let companion = Hyperedge::new(verts).expect("candidates lie outside the edge");
            companion_of.insert(companion, (ci, i));
        }
    }

    let mut cand_deg = vec![0u64; cands.len()];
    let mut present = vec![0u32; cands.len()];
    for f in stream.pass(meter) {
        if let Some(&(ci, i)) = companion_of.get(f) {
            present[ci] |= 1 << i;
        }
        for &v in f.vertices() {
            if let Some(&ci) = cand_of.get(&v) {
                cand_deg[ci] += 1;
            }
        }
    }

    let top = (head.degs[k - 1], head.ordered[k - 1]);
    let full: u32 = (1 << k) - 1;
    let mut z_sum = 0.0;
    for slot in &slots {
        let Some(x) = slot.sample() else { continue };
        let ci = cand_of[&(x as VertexId)];
        if present[ci] == full && top < (cand_deg[ci], x as VertexId) {
            z_sum += z_value;
        }
    }
    (stream.m() as f64 / head.r as f64) * z_sum
}

struct EasyTrial {
    f0_mode: F0Mode,
}

impl FourPassTrial for EasyTrial {
    type Head = EasyHead;

    fn head(
        &self,
        stream: &EdgeStream,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<(EasyHead, u64), EstimatorError> {
        let head = head_passes(stream, node, meter)?;
        let r = head.r;
        Ok((head, r))
    }

    fn tail(
        &self,
        stream: &EdgeStream,
        head: EasyHead,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<f64, EstimatorError> {
        Ok(tail_passes(stream, &head, node, self.f0_mode, meter))
    }
}

/// One four-pass run. Returns the unbiased estimate and the neighbor budget
/// R it used.
pub fn easy_basic(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<(f64, u64), EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    let node = SeededRng::new(cfg.master_seed).derive(ALG_TAG);
    let mut meter = SpaceMeter::new();
    let head = head_passes(stream, node, &mut meter)?;
    let y = tail_passes(stream, &head, node, cfg.f0_mode, &mut meter);
    Ok((y, head.r))
}

/// Boosted four-pass estimate under the degree ordering. The analytic
/// variance scale here is m^(3/2) for every arity.
pub fn easy_estimate(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    boosted_four_pass(
        stream,
        cfg,
        Algorithm::Easy,
        1.5,
        &EasyTrial {
            f0_mode: cfg.f0_mode,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use generators::gen_complete;

    fn single_simplex_stream() -> EdgeStream {
        EdgeStream::from_hypergraph(&gen_complete(3, 4).unwrap())
    }

    fn cfg(seed: u64) -> EstimatorConfig {
        EstimatorConfig::new(3, 1, 1.0, 0.3, seed)
    }

    #[test]
    fn single_simplex_mean_is_one() {
        let stream = single_simplex_stream();
        let runs = 4000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for seed in 0..runs {
            let (y, r) = easy_basic(&stream, &cfg(seed)).unwrap();
            assert_eq!(r, 2, "min degree 3 against sqrt(4) gives R = 2");
            sum += y;
            sum_sq += y * y;
        }
        let mean = sum / runs as f64;
        let var = (sum_sq / runs as f64 - mean * mean).max(0.0);
        let se = (var / runs as f64).sqrt();
        assert!(
            (mean - 1.0).abs() <= 4.0 * se.max(1e-9),
            "mean {mean} strays from 1 by more than 4 standard errors ({se})"
        );
    }

    #[test]
    fn simplex_free_stream_always_returns_zero() {
        let h = hypergraph_core::Hypergraph::new(
            3,
            6,
            vec![
                Hyperedge::new(vec![1, 2, 3]).unwrap(),
                Hyperedge::new(vec![2, 3, 4]).unwrap(),
                Hyperedge::new(vec![4, 5, 6]).unwrap(),
            ],
        )
        .unwrap();
        let stream = EdgeStream::from_hypergraph(&h);
        for seed in 0..40 {
            let (y, _) = easy_basic(&stream, &cfg(seed)).unwrap();
            assert_eq!(y, 0.0);
        }
    }

    #[test]
    fn sketched_neighborhood_counting_still_runs() {
        let stream = single_simplex_stream();
        let mut c = cfg(7);
        c.f0_mode = F0Mode::Kmv { epsilon: 0.5 };
        let (y, _) = easy_basic(&stream, &c).unwrap();
        assert!(y.is_finite() && y >= 0.0);
    }

    #[test]
    fn boosted_estimate_runs_four_passes() {
        let inst = generators::GeneratorSpec {
            family: generators::Family::Planted {
                k: 3,
                n: 14,
                m: 10,
                t_target: 2,
            },
            order: generators::ArrivalOrder::Shuffled,
            seed: 6,
        }
        .build()
        .unwrap();
        let est = easy_estimate(&inst.stream(), &EstimatorConfig::new(3, 2, 1.0, 0.3, 17)).unwrap();
        assert_eq!(est.passes, 4);
        assert!(est.value >= 0.0 && est.value <= 4.0, "value {}", est.value);
    }
}
