//! Heavy/light edge oracle backed by a vertex sample.
//!
//! A vertex set Z is drawn by hashing ids at rate q, and every stream edge
//! touching Z is retained. For an edge e the retained data suffice to count
//! the sampled completions: vertices z in Z outside e whose k companion
//! edges (e minus one vertex, plus z) were all retained. Edges whose sampled
//! completion count reaches q * t^theta are declared heavy. The same
//! retained sample supports an unbiased count of simplices containing at
//! least one heavy edge, each charged to its heavy edges in equal shares.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use hypergraph_core::{Hyperedge, VertexId};
use sampling_primitives::{BernoulliHash, SeededRng};
use stream_engine::{EdgeStream, SpaceMeter};

use crate::check_stream;
use crate::config::EstimatorConfig;
use crate::error::EstimatorError;

const ALG_TAG: u64 = 3;

/// Classification relative to the simplices-per-edge threshold t^theta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    Heavy,
    Light,
}

/// Streaming accumulator for the oracle. Callers feed every edge of one
/// pass through `observe` and then `finish`; this keeps the oracle build
/// mergeable into a pass that also serves another consumer.
pub struct OracleBuilder {
    k: usize,
    q_eff: f64,
    threshold: f64,
    theta: f64,
    bern: BernoulliHash,
    z: Vec<VertexId>,
    z_set: HashSet<VertexId>,
    s_edges: HashSet<Hyperedge>,
    apexes: HashMap<Vec<VertexId>, Vec<VertexId>>,
}

impl OracleBuilder {
    pub fn new(
        cfg: &EstimatorConfig,
        theta: f64,
        n: VertexId,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<Self, EstimatorError> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(EstimatorError::Config(format!(
                "oracle exponent theta must lie in (0, 1), got {theta}"
            )));
        }
        let t = cfg.t_promise as f64;
        let q = if cfg.full_sampling {
            1.0
        } else {
            cfg.xi_value() * cfg.epsilon.powi(-2) * f64::from(n).ln() * t.powf(-theta)
        };
        let bern = BernoulliHash::new(node.key(), q.min(1.0));
        let q_eff = bern.prob();
        let z: Vec<VertexId> = (1..=n).filter(|&v| bern.contains(u64::from(v))).collect();
        meter.charge(z.len() as u64);
        let z_set = z.iter().copied().collect();
        Ok(OracleBuilder {
            k: cfg.k,
            q_eff,
            threshold: q_eff * t.powf(theta),
            theta,
            bern,
            z,
            z_set,
            s_edges: HashSet::new(),
            apexes: HashMap::new(),
        })
    }

    pub fn observe(&mut self, f: &Hyperedge, meter: &mut SpaceMeter) {
        if !f.vertices().iter().any(|v| self.z_set.contains(v)) {
            return;
        }
        if !self.s_edges.insert(f.clone()) {
            return;
        }
        meter.charge(self.k as u64);
        for &z in f.vertices() {
            if self.z_set.contains(&z) {
                self.apexes.entry(f.without(z)).or_default().push(z);
            }
        }
    }

    pub fn finish(mut self) -> HeavyLightOracle {
        for zs in self.apexes.values_mut() {
            zs.sort_unstable();
            zs.dedup();
        }
        HeavyLightOracle {
            k: self.k,
            q_eff: self.q_eff,
            threshold: self.threshold,
            theta: self.theta,
            bern: self.bern,
            z: self.z,
            s_edges: self.s_edges,
            apexes: self.apexes,
            cache: RefCell::new(HashMap::new()),
        }
    }
}

pub struct HeavyLightOracle {
    k: usize,
    q_eff: f64,
    threshold: f64,
    theta: f64,
    bern: BernoulliHash,
    z: Vec<VertexId>,
    s_edges: HashSet<Hyperedge>,
    apexes: HashMap<Vec<VertexId>, Vec<VertexId>>,
    cache: RefCell<HashMap<Hyperedge, EdgeClass>>,
}

impl HeavyLightOracle {
    /// Classifies an edge of the stream. Query answers are memoized; the
    /// cache is working state of the querying algorithm, not sample space.
    pub fn classify(&self, e: &Hyperedge) -> EdgeClass {
        if let Some(&c) = self.cache.borrow().get(e) {
            return c;
        }
        let class = if self.completions(e).len() as f64 >= self.threshold {
            EdgeClass::Heavy
        } else {
            EdgeClass::Light
        };
        self.cache.borrow_mut().insert(e.clone(), class);
        class
    }

    /// Sampled vertices z outside `e` whose k companion edges were all
    /// retained, in increasing order. When `e` is a stream edge each such z
    /// closes a genuine simplex.
    pub fn completions(&self, e: &Hyperedge) -> Vec<VertexId> {
        let keys: Vec<Vec<VertexId>> = e.vertices().iter().map(|&v| e.without(v)).collect();
        let Some(first) = self.apexes.get(&keys[0]) else {
            return Vec::new();
        };
        first
            .iter()
            .copied()
            .filter(|&z| !e.contains(z))
            .filter(|&z| {
                keys[1..].iter().all(|key| {
                    self.apexes
                        .get(key)
                        .is_some_and(|zs| zs.binary_search(&z).is_ok())
                })
            })
            .collect()
    }

    /// Sum over sampled completions of 1 / (number of heavy edges in the
    /// closed simplex). Meaningful only when `e` is itself a heavy stream
    /// edge; dividing the summed mass by q gives an unbiased count of
    /// simplices containing a heavy edge.
    pub fn heavy_mass(&self, e: &Hyperedge) -> f64 {
        let mut mass = 0.0;
        for z in self.completions(e) {
            let mut heavy = 1u32;
            for &v in e.vertices() {
                let mut verts = e.without(v);
                verts.push(z);
                let companion = Hyperedge::new(verts).expect("completion lies outside the edge");
                if self.classify(&companion) == EdgeClass::Heavy {
                    heavy += 1;
                }
            }
            mass += 1.0 / f64::from(heavy);
        }
        mass
    }

    /// Effective vertex sampling rate (a dyadic approximation of q).
    pub fn q_eff(&self) -> f64 {
        self.q_eff
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Heaviness cutoff on the sampled completion count, q * t^theta.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn sampled_vertices(&self) -> usize {
        self.z.len()
    }

    pub fn retained_edges(&self) -> usize {
        self.s_edges.len()
    }

    /// Words attributable to the oracle: one per sampled vertex, k per
    /// retained edge.
    pub fn space_words(&self) -> u64 {
        self.z.len() as u64 + (self.k as u64) * (self.s_edges.len() as u64)
    }

    pub fn is_exact(&self) -> bool {
        self.bern.is_certain()
    }
}

/// Builds the oracle in one pass. `theta` is the heaviness exponent the
/// caller's estimator works at.
pub fn build_oracle(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    theta: f64,
) -> Result<HeavyLightOracle, EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    let node = SeededRng::new(cfg.master_seed).derive(ALG_TAG);
    let mut meter = SpaceMeter::new();
    let mut builder = OracleBuilder::new(cfg, theta, stream.n(), node, &mut meter)?;
    for f in stream.pass(&mut meter) {
        builder.observe(f, &mut meter);
    }
    Ok(builder.finish())
}

/// Unbiased estimate of the number of simplices containing at least one
/// heavy edge. One pass; each simplex is split in equal shares across its
/// heavy edges so overlapping charges cancel.
pub fn estimate_heavy(
    stream: &EdgeStream,
    oracle: &HeavyLightOracle,
    cfg: &EstimatorConfig,
) -> Result<f64, EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    let mut meter = SpaceMeter::new();
    let mut mass = 0.0;
    for e in stream.pass(&mut meter) {
        if oracle.classify(e) == EdgeClass::Heavy {
            mass += oracle.heavy_mass(e);
        }
    }
    Ok(mass / oracle.q_eff())
}
