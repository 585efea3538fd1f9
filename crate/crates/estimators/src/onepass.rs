//! Single-pass estimator under overlap promises.
//!
//! Requires a priori bounds on the simplices sharing one edge and one
//! vertex. Vertices are kept with probability p, edges with probability q
//! conditioned on carrying a kept vertex. An arriving edge is first checked
//! against the store: any vertex whose k companion edges are all stored
//! closes a simplex, and counts when the vertex is kept. Detection precedes
//! storage, so each simplex is examined exactly once, at its last arriving
//! edge. Conditioned on the closing vertex being kept, every companion is
//! stored independently with probability q, so a simplex is counted with
//! probability exactly p q^k.

use std::collections::HashMap;

use hypergraph_core::VertexId;
use sampling_primitives::{BernoulliHash, SeededRng};
use stream_engine::{EdgeStream, SpaceMeter};

use crate::config::EstimatorConfig;
use crate::error::EstimatorError;
use crate::report::{Algorithm, Diagnostics, Estimate};
use crate::stats::{copy_count, median};
use crate::{check_stream, edge_fingerprint, seed_tag};

const VERTEX_SUB: u64 = 0;
const EDGE_SUB: u64 = 1;

struct CopyOutcome {
    value: f64,
    stored: u64,
    hits: u64,
}

fn run_copy(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    node: SeededRng,
    meter: &mut SpaceMeter,
) -> Result<CopyOutcome, EstimatorError> {
    let k = cfg.k;
    let (p, q) = if cfg.full_sampling {
        (1.0, 1.0)
    } else {
        let (delta_e, delta_v) = cfg.overlap_promises("one-pass")?;
        let dv = delta_v as f64;
        let p = 9.0 * dv / (cfg.epsilon.powi(2) * cfg.t_promise as f64);
        let q = (delta_e as f64 / dv).max(dv.powf(-1.0 / k as f64));
        (p.min(1.0), q.min(1.0))
    };
    let f = BernoulliHash::new(node.derive(VERTEX_SUB).key(), p);
    let g = BernoulliHash::new(node.derive(EDGE_SUB).key(), q);
    let weight = 1.0 / (f.prob() * g.prob().powi(k as i32));

    let mut apexes: HashMap<Vec<VertexId>, Vec<VertexId>> = HashMap::new();
    let mut stored = 0u64;
    let mut hits = 0u64;
    for e in stream.pass(meter) {
        let verts = e.vertices();
        if let Some(first) = apexes.get(&e.without(verts[0])) {
            for &z in first {
                let closes = verts[1..].iter().all(|&v| {
                    apexes
                        .get(&e.without(v))
                        .is_some_and(|zs| zs.contains(&z))
                });
                if closes && f.contains(u64::from(z)) {
                    hits += 1;
                }
            }
        }
        let keeps_vertex = verts.iter().any(|&v| f.contains(u64::from(v)));
        if keeps_vertex && g.contains(edge_fingerprint(e)) {
            meter.charge(k as u64);
            stored += 1;
            for &v in verts {
                apexes.entry(e.without(v)).or_default().push(v);
            }
        }
    }
    Ok(CopyOutcome {
        value: hits as f64 * weight,
        stored,
        hits,
    })
}

fn copy_node(cfg: &EstimatorConfig, copy: u64) -> SeededRng {
    SeededRng::new(cfg.master_seed)
        .derive(seed_tag(Algorithm::Onepass))
        .derive(copy)
}

/// One copy of the single-pass estimator; unbiased. `copy` selects the
/// copy's randomness, matching the boosted run's copies.
pub fn one_pass_once(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    copy: u64,
) -> Result<f64, EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    if stream.m() == 0 {
        return Err(EstimatorError::EmptyStream);
    }
    let mut meter = SpaceMeter::new();
    Ok(run_copy(stream, cfg, copy_node(cfg, copy), &mut meter)?.value)
}

/// Single-pass estimate, median over enough independent copies for the
/// configured failure bound. Unless `full_sampling` is set, both overlap
/// promises must be present in the configuration.
pub fn one_pass(stream: &EdgeStream, cfg: &EstimatorConfig) -> Result<Estimate, EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    if stream.m() == 0 {
        return Err(EstimatorError::EmptyStream);
    }
    let copies = copy_count(cfg.delta) as u64;
    let mut master = SpaceMeter::new();
    let mut values = Vec::with_capacity(copies as usize);
    let mut diag = Diagnostics::default();
    let mut hits = 0u64;
    for c in 0..copies {
        let mut meter = SpaceMeter::new();
        let out = run_copy(stream, cfg, copy_node(cfg, c), &mut meter)?;
        master.absorb_concurrent(&meter);
        diag.sample_size += out.stored;
        hits += out.hits;
        values.push(out.value);
    }
    diag.detections = hits as f64;
    diag.copy_values = values.clone();
    let value = median(values);
    Ok(Estimate::from_meter(Algorithm::Onepass, value, copies, &master, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use generators::gen_complete;
    use hypergraph_core::count_simplices_exact;

    #[test]
    fn missing_promises_are_rejected() {
        let stream = EdgeStream::from_hypergraph(&gen_complete(3, 5).unwrap());
        let cfg = EstimatorConfig::new(3, 5, 0.5, 0.2, 1);
        let err = one_pass(&stream, &cfg).unwrap_err();
        assert!(matches!(err, EstimatorError::Config(_)));
    }

    #[test]
    fn full_sampling_counts_exactly() {
        let h = gen_complete(3, 7).unwrap();
        let stream = EdgeStream::from_hypergraph(&h);
        let t = count_simplices_exact(&h).t_k;
        let mut cfg = EstimatorConfig::new(3, t, 0.5, 0.2, 2);
        cfg.full_sampling = true;
        let est = one_pass(&stream, &cfg).unwrap();
        assert_eq!(est.value, t as f64);
        assert_eq!(est.passes, 1);
    }

    #[test]
    fn generous_promises_clamp_to_exact_counting() {
        let h = gen_complete(3, 6).unwrap();
        let stream = EdgeStream::from_hypergraph(&h);
        let t = count_simplices_exact(&h).t_k;
        let mut cfg = EstimatorConfig::new(3, 1, 1.0, 0.2, 3);
        cfg.delta_e = Some(1);
        cfg.delta_v = Some(1);
        let est = one_pass(&stream, &cfg).unwrap();
        assert_eq!(est.value, t as f64);
    }

    #[test]
    fn sparse_rates_stay_unbiased_on_a_single_simplex() {
        let stream = EdgeStream::from_hypergraph(&gen_complete(3, 4).unwrap());
        let runs = 3000u64;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for seed in 0..runs {
            // Deliberately loose promises; the scale uses realized rates,
            // so only the variance depends on how truthful they are.
            let mut cfg = EstimatorConfig::new(3, 288, 1.0, 0.2, seed);
            cfg.delta_e = Some(2);
            cfg.delta_v = Some(8);
            let y = one_pass_once(&stream, &cfg, 0).unwrap();
            sum += y;
            sum_sq += y * y;
        }
        let mean = sum / runs as f64;
        let var = (sum_sq / runs as f64 - mean * mean).max(0.0);
        let se = (var / runs as f64).sqrt();
        assert!(
            (mean - 1.0).abs() <= 5.0 * se.max(1e-9),
            "mean {mean}, se {se}"
        );
    }

    #[test]
    fn copies_are_deterministic() {
        let stream = EdgeStream::from_hypergraph(&gen_complete(3, 6).unwrap());
        let mut cfg = EstimatorConfig::new(3, 60, 0.9, 0.3, 5);
        cfg.delta_e = Some(3);
        cfg.delta_v = Some(10);
        assert_eq!(
            one_pass_once(&stream, &cfg, 2).unwrap(),
            one_pass_once(&stream, &cfg, 2).unwrap()
        );
        let e1 = one_pass(&stream, &cfg).unwrap();
        let e2 = one_pass(&stream, &cfg).unwrap();
        assert_eq!(e1.value, e2.value);
    }
}
