//! Mean-then-median boosting for the four-pass estimators, with the
//! worst-case-space abort.
//!
//! Trials split into a head (passes one and two, after which the trial's
//! neighbor budget `r` is known) and a tail (passes three and four, which
//! pay for that budget). Every trial of every batch runs side by side
//! against the same four stream scans, so the booster adds space, never
//! passes. A batch whose summed budgets exceed `abort_factor` times the
//! budgeted expectation is dropped after its head and contributes nothing.

use sampling_primitives::SeededRng;
use stream_engine::{EdgeStream, SpaceMeter};

use crate::check_stream;
use crate::config::EstimatorConfig;
use crate::error::EstimatorError;
use crate::report::{Algorithm, Diagnostics, Estimate};
use crate::stats::{batch_count, median};

pub(crate) trait FourPassTrial {
    type Head;

    /// Passes one and two. Returns the trial state and its budget `r`.
    fn head(
        &self,
        stream: &EdgeStream,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<(Self::Head, u64), EstimatorError>;

    /// Passes three and four; consumes the head and yields the trial value.
    fn tail(
        &self,
        stream: &EdgeStream,
        head: Self::Head,
        node: SeededRng,
        meter: &mut SpaceMeter,
    ) -> Result<f64, EstimatorError>;
}

/// `m_exponent` sets the analytic variance scale `m^m_exponent`, which
/// together with `variance_const` sizes each batch.
pub(crate) fn boosted_four_pass<T: FourPassTrial>(
    stream: &EdgeStream,
    cfg: &EstimatorConfig,
    algorithm: Algorithm,
    m_exponent: f64,
    trial: &T,
) -> Result<Estimate, EstimatorError> {
    cfg.validate()?;
    check_stream(cfg, stream)?;
    if stream.m() == 0 {
        return Err(EstimatorError::EmptyStream);
    }

    let m = stream.m() as f64;
    let variance_scale = cfg.variance_const * m.powf(m_exponent);
    let batch_size = (variance_scale / (cfg.epsilon * cfg.epsilon * cfg.t_promise as f64))
        .ceil()
        .max(1.0) as usize;
    let num_batches = batch_count(cfg.delta);
    let abort_threshold = cfg.abort_factor * batch_size as f64 * cfg.expected_r_budget;

    let root = SeededRng::new(cfg.master_seed).derive(algorithm as u64 + 16);
    let mut master = SpaceMeter::new();
    let mut means = Vec::with_capacity(num_batches);
    let mut aborted = 0u64;
    let mut r_sum = 0u64;
    let mut r_count = 0u64;
    let mut r_max = 0u64;

    for b in 0..num_batches {
        let bnode = root.derive(b as u64);
        let mut pending = Vec::with_capacity(batch_size);
        let mut batch_meter = SpaceMeter::new();
        let mut batch_r = 0u64;
        for t in 0..batch_size {
            let tnode = bnode.derive(t as u64);
            let mut tmeter = SpaceMeter::new();
            let (head, r) = trial.head(stream, tnode, &mut tmeter)?;
            batch_r += r;
            r_max = r_max.max(r);
            pending.push((head, tnode, tmeter));
        }
        r_sum += batch_r;
        r_count += batch_size as u64;

        if batch_r as f64 > abort_threshold {
            aborted += 1;
            for (_, _, tmeter) in &pending {
                batch_meter.absorb_concurrent(tmeter);
            }
            master.absorb_concurrent(&batch_meter);
            continue;
        }

        let mut sum_y = 0.0;
        for (head, tnode, mut tmeter) in pending {
            sum_y += trial.tail(stream, head, tnode, &mut tmeter)?;
            batch_meter.absorb_concurrent(&tmeter);
        }
        means.push(sum_y / batch_size as f64);
        master.absorb_concurrent(&batch_meter);
    }

    if means.is_empty() {
        return Err(EstimatorError::EstimationFailed {
            batches: num_batches as u64,
        });
    }
    let value = median(means);
    let diag = Diagnostics {
        batches_total: num_batches as u64,
        batches_aborted: aborted,
        r_mean: r_sum as f64 / r_count as f64,
        r_max,
        ..Diagnostics::default()
    };
    let trials = (num_batches as u64 - aborted) * batch_size as u64;
    Ok(Estimate::from_meter(algorithm, value, trials, &master, diag))
}
