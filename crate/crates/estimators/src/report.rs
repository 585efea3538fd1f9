use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use stream_engine::SpaceMeter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Abundant,
    Easy,
    Simplest,
    Coloring,
    Shadow,
    Onepass,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Abundant,
        Algorithm::Easy,
        Algorithm::Simplest,
        Algorithm::Coloring,
        Algorithm::Shadow,
        Algorithm::Onepass,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Abundant => "abundant",
            Algorithm::Easy => "easy",
            Algorithm::Simplest => "simplest",
            Algorithm::Coloring => "coloring",
            Algorithm::Shadow => "shadow",
            Algorithm::Onepass => "onepass",
        }
    }

    /// Number of times the algorithm rewinds and scans the input. Trials and
    /// copies run side by side, so boosting never adds passes.
    pub fn advertised_passes(self) -> u64 {
        match self {
            Algorithm::Abundant | Algorithm::Easy => 4,
            Algorithm::Simplest | Algorithm::Coloring | Algorithm::Shadow => 2,
            Algorithm::Onepass => 1,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Aggregate observables from one estimation run. Everything here is
/// descriptive; the estimate's value never depends on it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Batches scheduled by the mean-then-median booster (four-pass
    /// estimators only).
    pub batches_total: u64,
    pub batches_aborted: u64,
    /// Mean and max of the per-trial neighbor-sampling budget R.
    pub r_mean: f64,
    pub r_max: u64,
    /// Edges retained by the oblivious sample after heavy filtering, summed
    /// over copies.
    pub sample_size: u64,
    /// Edges held by the heavy/light oracle, summed over copies.
    pub oracle_size: u64,
    /// Distinct edges the oracle classified heavy, summed over copies.
    pub heavy_edges: u64,
    /// Raw detection-accumulator mass before scaling, summed over copies.
    pub detections: f64,
    /// Per-copy estimates fed to the median (two-pass and one-pass
    /// estimators only).
    pub copy_values: Vec<f64>,
}

/// Final output of one estimator invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub algorithm: Algorithm,
    pub value: f64,
    /// Basic-estimator runs or concurrent copies that contributed.
    pub trials: u64,
    pub passes: u64,
    pub space_peak_words: u64,
    pub diag: Diagnostics,
}

impl Estimate {
    /// Packs up a finished run. Panics if the meter's pass count disagrees
    /// with the algorithm's advertised count: that is a harness bug, not an
    /// input condition.
    pub fn from_meter(
        algorithm: Algorithm,
        value: f64,
        trials: u64,
        meter: &SpaceMeter,
        diag: Diagnostics,
    ) -> Self {
        assert_eq!(
            meter.passes_used(),
            algorithm.advertised_passes(),
            "{algorithm} used {} passes",
            meter.passes_used()
        );
        Self {
            algorithm,
            value,
            trials,
            passes: meter.passes_used(),
            space_peak_words: meter.peak_words(),
            diag,
        }
    }
}

/// One line of the bench log. Failed runs carry `error` and leave the result
/// fields empty, so a sweep never silently drops a configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub algorithm: String,
    pub k: usize,
    pub n: u32,
    pub m: u64,
    pub t_promise: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub passes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub space_peak_words: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub const RUN_RECORD_SCHEMA_VERSION: u32 = 1;

pub struct RunContext {
    pub k: usize,
    pub n: u32,
    pub m: u64,
    pub seed: u64,
    pub wall_time_ms: f64,
    pub exact: Option<u64>,
}

impl RunRecord {
    pub fn success(cfg: &crate::EstimatorConfig, ctx: &RunContext, est: &Estimate) -> Self {
        Self {
            schema_version: RUN_RECORD_SCHEMA_VERSION,
            algorithm: est.algorithm.name().to_string(),
            k: ctx.k,
            n: ctx.n,
            m: ctx.m,
            t_promise: cfg.t_promise,
            epsilon: cfg.epsilon,
            delta: cfg.delta,
            seed: ctx.seed,
            wall_time_ms: ctx.wall_time_ms,
            value: Some(est.value),
            trials: Some(est.trials),
            passes: Some(est.passes),
            space_peak_words: Some(est.space_peak_words),
            exact: ctx.exact,
            error: None,
        }
    }

    pub fn failure(
        cfg: &crate::EstimatorConfig,
        ctx: &RunContext,
        algorithm: Algorithm,
        error: &crate::EstimatorError,
    ) -> Self {
        Self {
            schema_version: RUN_RECORD_SCHEMA_VERSION,
            algorithm: algorithm.name().to_string(),
            k: ctx.k,
            n: ctx.n,
            m: ctx.m,
            t_promise: cfg.t_promise,
            epsilon: cfg.epsilon,
            delta: cfg.delta,
            seed: ctx.seed,
            wall_time_ms: ctx.wall_time_ms,
            value: None,
            trials: None,
            passes: None,
            space_peak_words: None,
            exact: ctx.exact,
            error: Some(error.to_string()),
        }
    }
}
