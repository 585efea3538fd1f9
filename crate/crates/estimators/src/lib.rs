//! Estimators for the number of simplices in a hypergraph edge stream.
//!
//! A simplex on k+1 vertices is witnessed by the presence of all its k+1
//! edges. Every estimator here reads the stream a fixed number of times,
//! reports an unbiased (or exact, once sampling rates saturate) count, and
//! meters the words it retains:
//!
//! * [`abundant_estimate`], four passes, for streams promised to carry many
//!   simplices relative to their size;
//! * [`easy_estimate`], four passes, keyed to the global degree ordering;
//! * [`meager_simplest`], [`meager_coloring`], [`meager_shadow`], two
//!   passes, for sparse counts, combining oblivious edge retention with a
//!   heavy/light oracle;
//! * [`one_pass`], a single pass under promises bounding how many simplices
//!   share an edge or a vertex.
//!
//! Single-trial entry points (`*_basic`, `*_once`) expose the unbiased
//! estimators the boosted versions are built from.

mod abundant;
mod boost;
mod config;
mod easy;
mod error;
mod oblivious;
mod onepass;
mod oracle;
mod report;
mod stats;

pub use abundant::{abundant_basic, abundant_estimate};
pub use config::EstimatorConfig;
pub use easy::{easy_basic, easy_estimate};
pub use error::EstimatorError;
pub use oblivious::{
    meager_coloring, meager_coloring_once, meager_shadow, meager_shadow_once, meager_simplest,
    meager_simplest_once,
};
pub use onepass::{one_pass, one_pass_once};
pub use oracle::{build_oracle, estimate_heavy, EdgeClass, HeavyLightOracle, OracleBuilder};
pub use report::{
    Algorithm, Diagnostics, Estimate, RunContext, RunRecord, RUN_RECORD_SCHEMA_VERSION,
};
pub use sampling_primitives::F0Mode;
pub use stats::median_of_means;

use hypergraph_core::Hyperedge;
use stream_engine::EdgeStream;

pub(crate) fn check_stream(
    cfg: &EstimatorConfig,
    stream: &EdgeStream,
) -> Result<(), EstimatorError> {
    if stream.k() != cfg.k {
        return Err(EstimatorError::Config(format!(
            "stream arity {} does not match configured arity {}",
            stream.k(),
            cfg.k
        )));
    }
    Ok(())
}

/// Stable 64-bit identity of an edge, keying per-edge coin flips.
pub(crate) fn edge_fingerprint(e: &Hyperedge) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &v in e.vertices() {
        for b in u64::from(v).to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
    }
    h
}

/// Root of each algorithm's seed subtree. Tag 3 is reserved for standalone
/// oracle builds and 16 upward for batch boosting.
pub(crate) fn seed_tag(algorithm: Algorithm) -> u64 {
    match algorithm {
        Algorithm::Abundant => 1,
        Algorithm::Easy => 2,
        Algorithm::Simplest => 4,
        Algorithm::Coloring => 5,
        Algorithm::Shadow => 6,
        Algorithm::Onepass => 7,
    }
}
