//! Two-pass estimators built on oblivious edge retention.
//!
//! All three run the same skeleton. Pass one retains a random substructure
//! of the stream (whole edges, color-coherent edges, or color-coherent
//! shadow images) and concurrently builds a heavy/light oracle. Retained
//! data for heavy edges is dropped before pass two. Pass two routes each
//! arriving edge by class: heavy edges contribute fractional simplex shares
//! through the oracle, light edges are completed against the retained
//! substructure and rescaled by the retention probability.
//!
//! A single copy is unbiased; the exported estimators take the median of
//! enough independent copies to reach the configured failure bound. Copies
//! run on the same passes, so their space adds while the pass count stays
//! two.

use std::collections::HashMap;

use hypergraph_core::{Hyperedge, VertexId};
use sampling_primitives::{
    encode_sorted_tuple, tuple_domain, BernoulliHash, KwiseHashFamily, SeededRng,
};
use stream_engine::{EdgeStream, SpaceMeter};

use crate::config::EstimatorConfig;
use crate::error::EstimatorError;
use crate::oracle::{EdgeClass, HeavyLightOracle, OracleBuilder};
use crate::report::{Algorithm, Diagnostics, Estimate};
use crate::stats::{copy_count, median};
use crate::{check_stream, edge_fingerprint, seed_tag};

const ORACLE_SUB: u64 = 0;
const SCHEME_SUB: u64 = 1;

/// Exponent triple of a retention scheme. A scheme detecting a light
/// simplex with probability p^alpha admits second moments at p^-beta and
/// per-edge storage at p^-gamma; the skeleton requires beta strictly
/// between alpha and 2 alpha, which keeps the oracle exponent
/// theta = beta / alpha - 1 inside (0, 1).
struct SchemeParams {
    theta: f64,
    p_eff: f64,
    colors: u64,
}

fn scheme_params(cfg: &EstimatorConfig, n: VertexId, alpha: u32, beta: u32, gamma: u32) -> SchemeParams {
    assert!(alpha < beta && beta < 2 * alpha, "variance exponent out of range");
    assert!(gamma <= alpha, "storage exponent out of range");
    let theta = f64::from(beta - alpha) / f64::from(alpha);
    let p_raw = if cfg.full_sampling {
        1.0
    } else {
        let budget = f64::from(n).log2() / (cfg.epsilon.powi(2) * cfg.t_promise as f64);
        budget.powf(1.0 / f64::from(alpha))
    };
    let colors = (1.0 / p_raw.min(1.0)).ceil().max(1.0) as u64;
    SchemeParams {
        theta,
        p_eff: p_raw.min(1.0),
        colors,
    }
}

/// Pass-one retention and pass-two completion, specialized per scheme.
trait LightScheme {
    fn words_per_entry(&self) -> u64;
    /// Applies the retention rule; true when the edge was kept.
    fn offer(&mut self, e: &Hyperedge) -> bool;
    /// Drops retained entries whose originating edge is heavy, returning
    /// the words released, then freezes the completion index.
    fn purge_and_index(&mut self, oracle: &HeavyLightOracle) -> u64;
    fn stored_entries(&self) -> u64;
    /// Number of retained completions of a light arriving edge.
    fn detect(&self, e: &Hyperedge) -> u64;
    /// Divisor turning the summed detections into an unbiased count.
    fn scale(&self) -> f64;
}

/// Sorted-list intersection over a completion index: candidates listed
/// under every one of the edge's (k-1)-subsets and accepted by `keep`.
fn closing_candidates(
    index: &HashMap<Vec<VertexId>, Vec<VertexId>>,
    e: &Hyperedge,
    mut keep: impl FnMut(VertexId) -> bool,
) -> u64 {
    let verts = e.vertices();
    let Some(first) = index.get(&e.without(verts[0])) else {
        return 0;
    };
    first
        .iter()
        .copied()
        .filter(|&z| keep(z))
        .filter(|&z| {
            verts[1..].iter().all(|&v| {
                index
                    .get(&e.without(v))
                    .is_some_and(|zs| zs.binary_search(&z).is_ok())
            })
        })
        .count() as u64
}

fn freeze_index(index: &mut HashMap<Vec<VertexId>, Vec<VertexId>>) {
    for zs in index.values_mut() {
        zs.sort_unstable();
        zs.dedup();
    }
}

/// Retains each edge independently. An arriving edge together with a
/// retained completion closes a simplex through k retained companions, so
/// every all-light simplex is detected (k+1) p^k times in expectation.
struct SimplestScheme {
    k: usize,
    bern: BernoulliHash,
    stored: Vec<Hyperedge>,
    apexes: HashMap<Vec<VertexId>, Vec<VertexId>>,
}

impl SimplestScheme {
    fn new(cfg: &EstimatorConfig, n: VertexId, node: SeededRng) -> (Self, SchemeParams) {
        let k = cfg.k as u32;
        let mut params = scheme_params(cfg, n, k, 2 * k - 1, 1);
        let bern = BernoulliHash::new(node.key(), params.p_eff);
        params.p_eff = bern.prob();
        (
            SimplestScheme {
                k: cfg.k,
                bern,
                stored: Vec::new(),
                apexes: HashMap::new(),
            },
            params,
        )
    }

    fn p_eff(&self) -> f64 {
        self.bern.prob()
    }
}

impl LightScheme for SimplestScheme {
    fn words_per_entry(&self) -> u64 {
        self.k as u64
    }

    fn offer(&mut self, e: &Hyperedge) -> bool {
        if !self.bern.contains(edge_fingerprint(e)) {
            return false;
        }
        self.stored.push(e.clone());
        true
    }

    fn purge_and_index(&mut self, oracle: &HeavyLightOracle) -> u64 {
        let before = self.stored.len();
        self.stored.retain(|e| oracle.classify(e) == EdgeClass::Light);
        for e in &self.stored {
            for &v in e.vertices() {
                self.apexes.entry(e.without(v)).or_default().push(v);
            }
        }
        freeze_index(&mut self.apexes);
        (before - self.stored.len()) as u64 * self.words_per_entry()
    }

    fn stored_entries(&self) -> u64 {
        self.stored.len() as u64
    }

    fn detect(&self, e: &Hyperedge) -> u64 {
        closing_candidates(&self.apexes, e, |z| !e.contains(z))
    }

    fn scale(&self) -> f64 {
        (self.k as f64 + 1.0) * self.p_eff().powi(self.k as i32)
    }
}

/// Retains an edge when its k (k-1)-subsets hash to one color under a
/// shared coloring. Retention of an arriving edge's k companions forces
/// the full simplex monochromatic, which happens with probability
/// p^(C(k+1,2)-1); restricting candidates above the edge's maximum counts
/// each simplex from its least base edge only.
struct ColoringScheme {
    k: usize,
    n: u64,
    hash: KwiseHashFamily,
    p_eff: f64,
    alpha: u32,
    stored: Vec<Hyperedge>,
    apexes: HashMap<Vec<VertexId>, Vec<VertexId>>,
}

impl ColoringScheme {
    fn new(cfg: &EstimatorConfig, n: VertexId, node: SeededRng) -> (Self, SchemeParams) {
        let k = cfg.k as u32;
        let choose2 = |x: u32| x * (x - 1) / 2;
        let alpha = choose2(k + 1) - 1;
        let mut params = scheme_params(cfg, n, alpha, k * k - 1, k - 1);
        params.p_eff = 1.0 / params.colors as f64;
        let hash = KwiseHashFamily::draw(
            2 * (alpha as usize + 1),
            tuple_domain(u64::from(n), cfg.k - 1),
            params.colors,
            &mut node.rng(),
        );
        (
            ColoringScheme {
                k: cfg.k,
                n: u64::from(n),
                hash,
                p_eff: params.p_eff,
                alpha,
                stored: Vec::new(),
                apexes: HashMap::new(),
            },
            params,
        )
    }

    fn monochromatic(&self, e: &Hyperedge) -> bool {
        let mut want = None;
        for &v in e.vertices() {
            let sub: Vec<u64> = e.without(v).into_iter().map(u64::from).collect();
            let c = self.hash.color(encode_sorted_tuple(&sub, self.n));
            if *want.get_or_insert(c) != c {
                return false;
            }
        }
        true
    }
}

impl LightScheme for ColoringScheme {
    fn words_per_entry(&self) -> u64 {
        self.k as u64
    }

    fn offer(&mut self, e: &Hyperedge) -> bool {
        if !self.monochromatic(e) {
            return false;
        }
        self.stored.push(e.clone());
        true
    }

    fn purge_and_index(&mut self, oracle: &HeavyLightOracle) -> u64 {
        let before = self.stored.len();
        self.stored.retain(|e| oracle.classify(e) == EdgeClass::Light);
        for e in &self.stored {
            for &v in e.vertices() {
                self.apexes.entry(e.without(v)).or_default().push(v);
            }
        }
        freeze_index(&mut self.apexes);
        (before - self.stored.len()) as u64 * self.words_per_entry()
    }

    fn stored_entries(&self) -> u64 {
        self.stored.len() as u64
    }

    fn detect(&self, e: &Hyperedge) -> u64 {
        let top = e.max_vertex();
        closing_candidates(&self.apexes, e, |z| z > top)
    }

    fn scale(&self) -> f64 {
        self.p_eff.powi(self.alpha as i32)
    }
}

/// Retains the shadow image of an edge: its vertices other than the
/// minimum, each fused with that minimum into a vertex of the squared
/// ground set. Retention requires the image's (k-2)-subsets monochromatic.
/// An arriving edge's k companions in a simplex whose apex is the overall
/// minimum share that apex as flavor, and their joint retention has
/// probability p^(C(k,2)-1). Flavors are minima, so candidates sit below
/// the arriving edge automatically and each simplex is counted once.
struct ShadowScheme {
    k: usize,
    n: u64,
    hash: KwiseHashFamily,
    p_eff: f64,
    alpha: u32,
    stored: Vec<(VertexId, Vec<VertexId>)>,
    flavors: HashMap<Vec<VertexId>, Vec<VertexId>>,
}

impl ShadowScheme {
    fn new(
        cfg: &EstimatorConfig,
        n: VertexId,
        node: SeededRng,
    ) -> Result<(Self, SchemeParams), EstimatorError> {
        if cfg.k < 3 {
            return Err(EstimatorError::UnsupportedArity {
                algorithm: "shadow",
                k: cfg.k,
                need: 3,
            });
        }
        let k = cfg.k as u32;
        let choose2 = |x: u32| x * (x - 1) / 2;
        let alpha = choose2(k) - 1;
        let mut params = scheme_params(cfg, n, alpha, 2 * choose2(k) - k, k - 2);
        params.p_eff = 1.0 / params.colors as f64;
        let hash = KwiseHashFamily::draw(
            2 * (alpha as usize + 1),
            tuple_domain(u64::from(n) * u64::from(n), cfg.k - 2),
            params.colors,
            &mut node.rng(),
        );
        Ok((
            ShadowScheme {
                k: cfg.k,
                n: u64::from(n),
                hash,
                p_eff: params.p_eff,
                alpha,
                stored: Vec::new(),
                flavors: HashMap::new(),
            },
            params,
        ))
    }

    /// Shadow vertex for `v` under flavor `f`, on the ground set of
    /// flavored pairs.
    fn shade(&self, flavor: VertexId, v: VertexId) -> u64 {
        (u64::from(flavor) - 1) * self.n + u64::from(v)
    }

    fn image_monochromatic(&self, flavor: VertexId, base: &[VertexId]) -> bool {
        let image: Vec<u64> = base.iter().map(|&v| self.shade(flavor, v)).collect();
        let mut want = None;
        for skip in 0..image.len() {
            let sub: Vec<u64> = image
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &s)| s)
                .collect();
            let c = self.hash.color(encode_sorted_tuple(&sub, self.n * self.n));
            if *want.get_or_insert(c) != c {
                return false;
            }
        }
        true
    }
}

impl LightScheme for ShadowScheme {
    fn words_per_entry(&self) -> u64 {
        self.k as u64 - 1
    }

    fn offer(&mut self, e: &Hyperedge) -> bool {
        let flavor = e.min_vertex();
        let base = e.without(flavor);
        if !self.image_monochromatic(flavor, &base) {
            return false;
        }
        self.stored.push((flavor, base));
        true
    }

    fn purge_and_index(&mut self, oracle: &HeavyLightOracle) -> u64 {
        let before = self.stored.len();
        self.stored.retain(|(flavor, base)| {
            let mut verts = base.clone();
            verts.push(*flavor);
            let original = Hyperedge::new(verts).expect("stored images come from valid edges");
            oracle.classify(&original) == EdgeClass::Light
        });
        for (flavor, base) in &self.stored {
            self.flavors.entry(base.clone()).or_default().push(*flavor);
        }
        freeze_index(&mut self.flavors);
        (before - self.stored.len()) as u64 * self.words_per_entry()
    }

    fn stored_entries(&self) -> u64 {
        self.stored.len() as u64
    }

    fn detect(&self, e: &Hyperedge) -> u64 {
        // Flavors are minima of their edges, hence below every vertex of
        // any base they appear under; no candidate filter is needed.
        closing_candidates(&self.flavors, e, |_| true)
    }

    fn scale(&self) -> f64 {
        self.p_eff.powi(self.alpha as i32)
    }
}

struct CopyOutcome {
    value: f64,
    stored_entries: u64,
    oracle_words: u64,
    heavy_arrivals: u64,
    light_hits: u64,
}

fn run_copy<S: LightScheme>(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    mut scheme: S,
    theta: f64,
    oracle_node: SeededRng,
    meter: &mut SpaceMeter,
) -> Result<CopyOutcome, EstimatorError> {
    let mut builder = OracleBuilder::new(cfg, theta, stream.n(), oracle_node, meter)?;
    for f in stream.pass(meter) {
        builder.observe(f, meter);
        if scheme.offer(f) {
            meter.charge(scheme.words_per_entry());
        }
    }
    let oracle = builder.finish();
    meter.release(scheme.purge_and_index(&oracle));

    let mut light_hits = 0u64;
    let mut heavy_arrivals = 0u64;
    let mut heavy_mass = 0.0;
    for e in stream.pass(meter) {
        if oracle.classify(e) == EdgeClass::Heavy {
            heavy_arrivals += 1;
            heavy_mass += oracle.heavy_mass(e);
        } else {
            light_hits += scheme.detect(e);
        }
    }
    Ok(CopyOutcome {
        value: light_hits as f64 / scheme.scale() + heavy_mass / oracle.q_eff(),
        stored_entries: scheme.stored_entries(),
        oracle_words: oracle.space_words(),
        heavy_arrivals,
        light_hits,
    })
}

fn copy_outcome(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    algorithm: Algorithm,
    copy: u64,
    meter: &mut SpaceMeter,
) -> Result<CopyOutcome, EstimatorError> {
    let node = SeededRng::new(cfg.master_seed)
        .derive(seed_tag(algorithm))
        .derive(copy);
    let oracle_node = node.derive(ORACLE_SUB);
    let scheme_node = node.derive(SCHEME_SUB);
    let n = stream.n();
    match algorithm {
        Algorithm::Simplest => {
            let (scheme, params) = SimplestScheme::new(cfg, n, scheme_node);
            run_copy(stream, cfg, scheme, params.theta, oracle_node, meter)
        }
        Algorithm::Coloring => {
            let (scheme, params) = ColoringScheme::new(cfg, n, scheme_node);
            run_copy(stream, cfg, scheme, params.theta, oracle_node, meter)
        }
        Algorithm::Shadow => {
            let (scheme, params) = ShadowScheme::new(cfg, n, scheme_node)?;
            run_copy(stream, cfg, scheme, params.theta, oracle_node, meter)
        }
        _ => unreachable!("not an oblivious retention algorithm"),
    }
}

fn meager_run(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    algorithm: Algorithm,
) -> Result<Estimate, EstimatorError> {
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
        let out = copy_outcome(stream, cfg, algorithm, c, &mut meter)?;
        master.absorb_concurrent(&meter);
        diag.sample_size += out.stored_entries;
        diag.oracle_size += out.oracle_words;
        diag.heavy_edges += out.heavy_arrivals;
        hits += out.light_hits;
        values.push(out.value);
    }
    diag.detections = hits as f64;
    diag.copy_values = values.clone();
    let value = median(values);
    Ok(Estimate::from_meter(algorithm, value, copies, &master, diag))
}

fn meager_once(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    algorithm: Algorithm,
    copy: u64,
) -> Result<f64, EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    if stream.m() == 0 {
        return Err(EstimatorError::EmptyStream);
    }
    let mut meter = SpaceMeter::new();
    Ok(copy_outcome(stream, cfg, algorithm, copy, &mut meter)?.value)
}

/// Two-pass estimate from independently retained edges, median over
/// copies.
pub fn meager_simplest(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    meager_run(stream, cfg, Algorithm::Simplest)
}

/// One copy of the independent-retention estimator. Unbiased; `copy`
/// selects the copy's randomness, matching the boosted run's copies.
pub fn meager_simplest_once(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    copy: u64,
) -> Result<f64, EstimatorError> {
    meager_once(stream, cfg, Algorithm::Simplest, copy)
}

/// Two-pass estimate from color-coherent retention, median over copies.
pub fn meager_coloring(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    meager_run(stream, cfg, Algorithm::Coloring)
}

/// One copy of the color-coherent estimator; unbiased.
pub fn meager_coloring_once(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    copy: u64,
) -> Result<f64, EstimatorError> {
    meager_once(stream, cfg, Algorithm::Coloring, copy)
}

/// Two-pass estimate from color-coherent shadow retention, median over
/// copies. Needs arity at least 3.
pub fn meager_shadow(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
) -> Result<Estimate, EstimatorError> {
    meager_run(stream, cfg, Algorithm::Shadow)
}

/// One copy of the shadow estimator; unbiased.
pub fn meager_shadow_once(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    copy: u64,
) -> Result<f64, EstimatorError> {
    meager_once(stream, cfg, Algorithm::Shadow, copy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use generators::{gen_complete, ArrivalOrder, Family, GeneratorSpec};
    use hypergraph_core::count_simplices_exact;

    fn complete_stream(k: usize, n: VertexId) -> (EdgeStream, u64) {
        let h = gen_complete(k, n).unwrap();
        let t = count_simplices_exact(&h).t_k;
        (EdgeStream::from_hypergraph(&h), t)
    }

    #[test]
    fn full_sampling_is_exact_for_every_scheme() {
        let (stream, t) = complete_stream(3, 6);
        let mut cfg = EstimatorConfig::new(3, t.max(1), 0.5, 0.2, 3);
        cfg.full_sampling = true;
        for (est, alg) in [
            (meager_simplest(&stream, &cfg).unwrap(), Algorithm::Simplest),
            (meager_coloring(&stream, &cfg).unwrap(), Algorithm::Coloring),
            (meager_shadow(&stream, &cfg).unwrap(), Algorithm::Shadow),
        ] {
            assert_eq!(est.value, t as f64, "{alg:?}");
            assert_eq!(est.passes, 2);
            assert!(est.trials >= 13 && est.trials % 2 == 1);
        }
    }

    #[test]
    fn pair_streams_work_without_shadow() {
        let (stream, t) = complete_stream(2, 5);
        let mut cfg = EstimatorConfig::new(2, t, 0.5, 0.2, 4);
        cfg.full_sampling = true;
        assert_eq!(meager_simplest(&stream, &cfg).unwrap().value, t as f64);
        assert_eq!(meager_coloring(&stream, &cfg).unwrap().value, t as f64);
        assert!(matches!(
            meager_shadow(&stream, &cfg),
            Err(EstimatorError::UnsupportedArity { need: 3, .. })
        ));
    }

    #[test]
    fn clamped_rates_make_the_estimate_exact() {
        // Small n with a weak promise pushes both sampling rates to 1, so
        // the randomized run collapses to the exact count.
        let (stream, t) = complete_stream(3, 6);
        let cfg = EstimatorConfig::new(3, 1, 1.0, 0.2, 5);
        for est in [
            meager_simplest(&stream, &cfg).unwrap(),
            meager_coloring(&stream, &cfg).unwrap(),
            meager_shadow(&stream, &cfg).unwrap(),
        ] {
            assert_eq!(est.value, t as f64);
        }
    }

    #[test]
    fn copies_are_deterministic() {
        let inst = GeneratorSpec {
            family: Family::Planted {
                k: 3,
                n: 30,
                m: 40,
                t_target: 7,
            },
            order: ArrivalOrder::Shuffled,
            seed: 9,
        }
        .build()
        .unwrap();
        let stream = inst.stream();
        let cfg = EstimatorConfig::new(3, 7, 0.7, 0.3, 21);
        for copy in [0, 3] {
            let a = meager_coloring_once(&stream, &cfg, copy).unwrap();
            let b = meager_coloring_once(&stream, &cfg, copy).unwrap();
            assert_eq!(a, b);
        }
        let e1 = meager_shadow(&stream, &cfg).unwrap();
        let e2 = meager_shadow(&stream, &cfg).unwrap();
        assert_eq!(e1.value, e2.value);
        assert_eq!(e1.space_peak_words, e2.space_peak_words);
    }

    #[test]
    fn single_copies_are_unbiased_on_a_planted_instance() {
        let inst = GeneratorSpec {
            family: Family::Planted {
                k: 3,
                n: 90,
                m: 90,
                t_target: 20,
            },
            order: ArrivalOrder::Shuffled,
            seed: 2,
        }
        .build()
        .unwrap();
        let stream = inst.stream();
        let t = count_simplices_exact(&stream.to_hypergraph().unwrap()).t_k as f64;
        assert!(t > 0.0);
        let runs = 600u64;
        type OnceFn = fn(&EdgeStream, &EstimatorConfig, u64) -> Result<f64, EstimatorError>;
        for (name, once) in [
            ("simplest", meager_simplest_once as OnceFn),
            ("coloring", meager_coloring_once as OnceFn),
            ("shadow", meager_shadow_once as OnceFn),
        ] {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for seed in 0..runs {
                let cfg = EstimatorConfig::new(3, t as u64, 1.0, 0.3, 1000 + seed);
                let y = once(&stream, &cfg, 0).unwrap();
                sum += y;
                sum_sq += y * y;
            }
            let mean = sum / runs as f64;
            let var = (sum_sq / runs as f64 - mean * mean).max(0.0);
            let se = (var / runs as f64).sqrt();
            assert!(
                (mean - t).abs() <= 5.0 * se.max(1e-9),
                "{name}: mean {mean} vs {t}, se {se}"
            );
        }
    }
}
